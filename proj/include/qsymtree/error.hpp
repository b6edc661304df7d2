#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qsymtree {

/// Mathematical precondition violated by otherwise well-formed input
/// (unrealizable strictness assignment, cyclic digraph where a DAG is needed).
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A size guard was exceeded; callers may retry with a larger guard.
class GuardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text or JSON input. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

/// Checkpoint file failed validation.
class IntegrityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace guard {

/// Default guard, overridable through QSYM_GUARD_MAX_N.
inline int max_n(int fallback) {
  if (const char* env = std::getenv("QSYM_GUARD_MAX_N")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return fallback;
}

inline void check(int n, int limit, const char* what) {
  if (n > limit) {
    throw GuardError(std::string(what) + ": n = " + std::to_string(n) +
                     " exceeds guard " + std::to_string(limit));
  }
}

}  // namespace guard
}  // namespace qsymtree
