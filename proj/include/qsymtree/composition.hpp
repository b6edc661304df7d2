#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsymtree {

/// An ordered sequence of positive integers. The empty composition has
/// weight 0 and indexes the unit of QSym.
class Composition {
public:
  Composition() = default;
  Composition(std::initializer_list<int> parts) : parts_(parts) { validate(); }
  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) { validate(); }

  /// Subset S of [n-1] to the composition with S(alpha) = S.
  static Composition from_subset(const std::vector<int>& subset, int n) {
    if (n < 0) throw std::invalid_argument("composition weight must be nonnegative");
    if (n == 0) {
      if (!subset.empty()) throw std::invalid_argument("nonempty subset for n = 0");
      return {};
    }
    std::vector<int> s = subset;
    std::sort(s.begin(), s.end());
    std::vector<int> parts;
    int prev = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 1 || s[i] >= n) {
        throw std::invalid_argument("subset element " + std::to_string(s[i]) +
                                    " outside [1, " + std::to_string(n - 1) + "]");
      }
      if (i > 0 && s[i] == s[i - 1]) throw std::invalid_argument("repeated subset element");
      parts.push_back(s[i] - prev);
      prev = s[i];
    }
    parts.push_back(n - prev);
    return Composition(std::move(parts));
  }

  /// Bit (i-1) set iff i is in S(alpha); requires weight <= 64.
  static Composition from_descent_mask(std::uint64_t mask, int n) {
    std::vector<int> parts;
    int prev = 0;
    for (int i = 1; i < n; ++i) {
      if (mask >> (i - 1) & 1U) {
        parts.push_back(i - prev);
        prev = i;
      }
    }
    if (n > 0) parts.push_back(n - prev);
    return Composition(std::move(parts));
  }

  std::span<const int> parts() const noexcept { return parts_; }
  const std::vector<int>& vec() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }
  int front() const { return parts_.front(); }
  int back() const { return parts_.back(); }

  int weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  /// S(alpha) = {a1, a1+a2, ..., a1+...+a_{l-1}}.
  std::vector<int> subset() const {
    std::vector<int> s;
    int acc = 0;
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
      acc += parts_[i];
      s.push_back(acc);
    }
    return s;
  }

  std::uint64_t descent_mask() const {
    std::uint64_t m = 0;
    for (int s : subset()) m |= std::uint64_t{1} << (s - 1);
    return m;
  }

  Composition reversed() const {
    std::vector<int> r(parts_.rbegin(), parts_.rend());
    return Composition(std::move(r));
  }

  /// Complement of S(alpha) inside [n-1].
  Composition complement() const {
    int n = weight();
    if (n == 0) return {};
    std::uint64_t full = n == 1 ? 0 : ((std::uint64_t{1} << (n - 1)) - 1);
    return from_descent_mask(full & ~descent_mask(), n);
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s + "]";
  }

  friend auto operator<=>(const Composition&, const Composition&) = default;
  friend bool operator==(const Composition&, const Composition&) = default;

private:
  void validate() const {
    for (int p : parts_) {
      if (p < 1) throw std::invalid_argument("composition parts must be positive");
    }
  }

  std::vector<int> parts_;
};

/// (a1,...,ak) join (b1,...,bl) = (a1,...,ak+b1,...,bl).
inline Composition near_concat(const Composition& a, const Composition& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("near-concatenation needs nonempty compositions");
  std::vector<int> p = a.vec();
  p.back() += b.front();
  p.insert(p.end(), b.vec().begin() + 1, b.vec().end());
  return Composition(std::move(p));
}

/// (a1,...,ak) . (b1,...,bl) = (a1,...,ak,b1,...,bl).
inline Composition concat(const Composition& a, const Composition& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("concatenation needs nonempty compositions");
  std::vector<int> p = a.vec();
  p.insert(p.end(), b.vec().begin(), b.vec().end());
  return Composition(std::move(p));
}

/// Descent composition co(w) of a word of distinct positive integers.
inline Composition descent_composition(std::span<const int> word) {
  if (word.empty()) throw std::invalid_argument("descent composition of an empty word");
  std::vector<int> seen(word.begin(), word.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw std::invalid_argument("word entries must be distinct");
  }
  std::vector<int> parts;
  int run = 1;
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (word[i - 1] > word[i]) {
      parts.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  parts.push_back(run);
  return Composition(std::move(parts));
}

/// All compositions of n in lexicographic order.
inline std::vector<Composition> compositions_of(int n) {
  std::vector<Composition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n - 1)); ++m) {
    out.push_back(Composition::from_descent_mask(m, n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qsymtree
