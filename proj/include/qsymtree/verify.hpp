#pragma once

// Collision scans: group a family by an invariant and report classes of
// non-isomorphic members sharing a value. Scans shard by index range across
// threads and can checkpoint to disk and resume.

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "canonical.hpp"
#include "digraph.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "io.hpp"
#include "poset.hpp"
#include "qsym.hpp"

namespace qsymtree {

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

/// Invariant values are hashed to this many hex digits for grouping; full
/// values are recomputed for every group with two or more members.
inline constexpr std::size_t kValueHashDigits = 16;

struct CollisionClass {
  std::string value_hash;
  std::vector<std::string> members;  // object text
  std::vector<std::string> keys;     // canonical keys, pairwise distinct
  bool uninformative = false;        // the shared value is zero
};

struct CollisionReport {
  std::string family;
  std::string invariant;
  int n = 0;
  std::size_t scanned = 0;
  std::vector<CollisionClass> collisions;
  long long runtime_ms = 0;
  bool complete = true;

  bool uninformative() const {
    return std::any_of(collisions.begin(), collisions.end(), [](const auto& c) { return c.uninformative; });
  }

  nlohmann::json to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : collisions) {
      cs.push_back({{"value_hash", c.value_hash}, {"members", c.members}, {"uninformative", c.uninformative}});
    }
    return {{"family", family},     {"invariant", invariant}, {"n", n},
            {"scanned", scanned},   {"collisions", cs},       {"runtime_ms", runtime_ms},
            {"complete", complete}, {"uninformative", uninformative()}};
  }

  /// Rendered from the JSON form so both carry the same content.
  static std::string render_text(const nlohmann::json& j) {
    std::ostringstream os;
    os << j.at("family").get<std::string>() << " n=" << j.at("n").get<int>() << " invariant=" << j.at("invariant").get<std::string>()
       << ": scanned " << j.at("scanned").get<std::size_t>() << ", " << j.at("collisions").size() << " collision class(es)";
    if (!j.at("complete").get<bool>()) os << " [incomplete]";
    if (j.at("uninformative").get<bool>()) os << " [uninformative invariant]";
    os << ", " << j.at("runtime_ms").get<long long>() << " ms\n";
    for (const auto& c : j.at("collisions")) {
      os << "class " << c.at("value_hash").get<std::string>();
      if (c.at("uninformative").get<bool>()) os << " (zero value)";
      os << ":\n";
      for (const auto& m : c.at("members")) os << m.get<std::string>() << "\n";
    }
    return os.str();
  }

  std::string to_text() const { return render_text(to_json()); }
};

struct ScanOptions {
  int jobs = 1;
  std::optional<std::filesystem::path> checkpoint;
  /// Stop (incomplete) after this many objects in this invocation.
  std::size_t stop_after = std::numeric_limits<std::size_t>::max();
  std::size_t chunk = 256;
  bool force = false;
};

namespace detail {

struct Checkpoint {
  std::string family, invariant;
  int n = 0;
  std::size_t total = 0;
  std::vector<std::string> hashes;  // one per processed index, in order

  nlohmann::json body() const {
    return {{"family", family}, {"invariant", invariant}, {"n", n}, {"total", total}, {"hashes", hashes}};
  }

  void save(const std::filesystem::path& path) const {
    nlohmann::json j = body();
    j["digest"] = sha256_hex(body().dump());
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream f(tmp);
      if (!f) throw std::runtime_error("cannot write checkpoint " + tmp.string());
      f << j.dump() << "\n";
    }
    std::filesystem::rename(tmp, path);
  }

  static std::optional<Checkpoint> load(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) return std::nullopt;
    nlohmann::json j;
    Checkpoint c;
    try {
      f >> j;
      c.family = j.at("family").get<std::string>();
      c.invariant = j.at("invariant").get<std::string>();
      c.n = j.at("n").get<int>();
      c.total = j.at("total").get<std::size_t>();
      c.hashes = j.at("hashes").get<std::vector<std::string>>();
      if (j.at("digest").get<std::string>() != sha256_hex(c.body().dump())) {
        throw IntegrityError("checkpoint digest mismatch: " + path.string());
      }
    } catch (const nlohmann::json::exception& e) {
      throw IntegrityError("corrupt checkpoint " + path.string() + ": " + e.what());
    }
    if (c.hashes.size() > c.total) throw IntegrityError("checkpoint holds more entries than the family");
    return c;
  }
};

}  // namespace detail

/// Generic scan. `invariant` maps an object to canonical bytes; `key` to its
/// isomorphism class; `is_zero` flags a zero invariant value.
template <class T>
CollisionReport collision_scan(const std::string& family, int n, const std::vector<T>& objects, const std::string& invariant_name,
                               const std::function<std::string(const T&)>& invariant,
                               const std::function<CanonicalKey(const T&)>& key, const ScanOptions& opt = {},
                               const std::function<bool(const std::string&)>& is_zero = nullptr) {
  auto start = std::chrono::steady_clock::now();
  CollisionReport report{family, invariant_name, n, objects.size(), {}, 0, true};

  detail::Checkpoint cp{family, invariant_name, n, objects.size(), {}};
  if (opt.checkpoint) {
    if (auto loaded = detail::Checkpoint::load(*opt.checkpoint)) {
      if (loaded->family != family || loaded->invariant != invariant_name || loaded->n != n || loaded->total != objects.size()) {
        throw IntegrityError("checkpoint belongs to a different scan (" + loaded->family + ", " + loaded->invariant + ", n=" +
                             std::to_string(loaded->n) + ")");
      }
      cp = std::move(*loaded);
    }
  }

  std::vector<std::string>& hashes = cp.hashes;
  std::size_t done_now = 0;
  const int jobs = std::max(1, opt.jobs);
  while (hashes.size() < objects.size() && done_now < opt.stop_after) {
    const std::size_t begin = hashes.size();
    const std::size_t end = begin + std::min({objects.size() - begin, std::max<std::size_t>(1, opt.chunk), opt.stop_after - done_now});
    hashes.resize(end);
    std::atomic<std::size_t> next{begin};
    std::mutex err_lock;
    std::exception_ptr error;
    std::string error_key;
    auto worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < end;) {
        try {
          hashes[i] = sha256_hex(invariant(objects[i])).substr(0, kValueHashDigits);
        } catch (...) {
          std::lock_guard<std::mutex> g(err_lock);
          if (!error) {
            error = std::current_exception();
            error_key = to_text(objects[i]);
          }
        }
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (error) {
      try {
        std::rethrow_exception(error);
      } catch (const std::exception& e) {
        throw std::runtime_error(std::string("invariant failed on\n") + error_key + e.what());
      }
    }
    done_now += end - begin;
    if (opt.checkpoint) cp.save(*opt.checkpoint);
  }

  if (hashes.size() < objects.size()) {
    report.complete = false;
  } else {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < hashes.size(); ++i) groups[hashes[i]].push_back(i);
    for (const auto& [h, idx] : groups) {
      if (idx.size() < 2) continue;
      // Revalidate: split by exact value, then keep classes with >= 2 keys.
      std::map<std::string, std::map<std::string, std::size_t>> by_value;  // value -> key -> first index
      for (std::size_t i : idx) by_value[invariant(objects[i])].try_emplace(key(objects[i]).bytes, i);
      for (const auto& [value, keys] : by_value) {
        if (keys.size() < 2) continue;
        CollisionClass c{h, {}, {}, is_zero && is_zero(value)};
        std::vector<std::size_t> members;
        for (const auto& [k, i] : keys) members.push_back(i);
        std::sort(members.begin(), members.end());
        for (std::size_t i : members) {
          c.members.push_back(to_text(objects[i]));
          c.keys.push_back(key(objects[i]).bytes);
        }
        report.collisions.push_back(std::move(c));
      }
    }
  }
  report.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Named scans.

inline void scan_guard(int n, int limit, const char* what, const ScanOptions& opt) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!opt.force) guard::check(n, guard::max_n(limit), what);
}

inline std::string kpw_bytes(const LabeledPoset& p) { return enumerator_f(p).to_json().dump(); }

inline std::function<CanonicalKey(const LabeledPoset&)> poset_key_fn() {
  return [](const LabeledPoset& p) { return canonical_key(p); };
}

enum class KbarInvariant { Enumerator, FSupport };

/// Tree posets by their all-strict enumerator.
inline CollisionReport conjecture2_scan(int n, const ScanOptions& opt = {}, KbarInvariant inv = KbarInvariant::Enumerator) {
  scan_guard(n, 10, "conjecture2_scan", opt);
  auto objects = gen_tree_posets(n);
  std::function<std::string(const LabeledPoset&)> f;
  std::string name;
  if (inv == KbarInvariant::Enumerator) {
    name = "Kbar_F";
    f = [](const LabeledPoset& p) { return kpw_bytes(all_strict(p)); };
  } else {
    name = "Kbar_F_support";
    f = [](const LabeledPoset& p) {
      nlohmann::json s = nlohmann::json::array();
      for (const auto& a : f_support(enumerator_f(all_strict(p)))) s.push_back(a.vec());
      return s.dump();
    };
  }
  return collision_scan<LabeledPoset>("tree_poset", n, objects, name, f, poset_key_fn(), opt);
}

/// Labeled rooted trees (or, with rooted = false, all labeled tree posets)
/// by K_(P,omega).
inline CollisionReport conjecture3_scan(int n, const ScanOptions& opt = {}, bool rooted = true) {
  scan_guard(n, 8, "conjecture3_scan", opt);
  auto base = rooted ? gen_rooted_tree_posets(n) : gen_tree_posets(n);
  auto objects = gen_labeled_variants(base, LabelPolicy::AllAssignments);
  return collision_scan<LabeledPoset>(rooted ? "labeled_rooted_tree_poset" : "labeled_tree_poset", n, objects, "K_F",
                                      kpw_bytes, poset_key_fn(), opt);
}

/// Fair trees by K_(P,omega); empty at every n.
inline CollisionReport fair_tree_scan(int n, const ScanOptions& opt = {}) {
  scan_guard(n, 8, "fair_tree_scan", opt);
  auto objects = gen_labeled_variants(gen_rooted_tree_posets(n), LabelPolicy::Fair);
  return collision_scan<LabeledPoset>("fair_tree", n, objects, "K_F", kpw_bytes, poset_key_fn(), opt);
}

/// Tree posets by the order-k principal specialization of the all-strict
/// (or, with weak = true, all-weak) enumerator.
inline CollisionReport spec_scan(int n, int k, const ScanOptions& opt = {}, bool weak = false) {
  scan_guard(n, 9, "spec_scan", opt);
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  auto objects = gen_tree_posets(n);
  std::function<std::string(const LabeledPoset&)> f = [k, weak](const LabeledPoset& p) {
    return principal_specialization(enumerator_f(weak ? all_weak(p) : all_strict(p)), k).to_json().dump();
  };
  const std::string zero = QPolynomial().to_json().dump();
  return collision_scan<LabeledPoset>("tree_poset", n, objects, std::string(weak ? "spec_K_" : "spec_Kbar_") + std::to_string(k), f,
                                      poset_key_fn(), opt, [zero](const std::string& v) { return v == zero; });
}

inline std::string xgt_bytes(const Digraph& g) { return chromatic_qsym_t(g).to_json().dump(); }

inline std::function<CanonicalKey(const Digraph&)> digraph_key_fn() {
  return [](const Digraph& g) { return digraph_key(g); };
}

/// Directed trees by X_G(x, t).
inline CollisionReport xgt_scan(int n, const ScanOptions& opt = {}) {
  scan_guard(n, 8, "xgt_scan", opt);
  return collision_scan<Digraph>("directed_tree", n, gen_directed_trees(n), "X_t", xgt_bytes, digraph_key_fn(), opt);
}

/// An X-collision between directed trees must come from posets that are
/// isomorphic or share Kbar (the top t-coefficient).
inline bool xgt_consistent(const CollisionReport& r) {
  for (const auto& c : r.collisions) {
    std::vector<LabeledPoset> ps;
    for (const auto& m : c.members) ps.push_back(dag_to_poset(std::get<Digraph>(parse_objects(m).at(0))));
    for (std::size_t i = 1; i < ps.size(); ++i) {
      if (!isomorphic(ps[0], ps[i]) && !(enumerator_f(ps[0]) == enumerator_f(ps[i]))) return false;
    }
  }
  return true;
}

/// Free trees by the multiset of X over all 2^(n-1) orientations of a fixed
/// vertex labeling.
inline CollisionReport multiset_question_scan(int n, const ScanOptions& opt = {}) {
  scan_guard(n, 7, "multiset_question_scan", opt);
  std::vector<Digraph> objects;
  for (const FreeTree& t : gen_free_trees(n)) objects.emplace_back(t.n, t.edges);
  std::function<std::string(const Digraph&)> f = [](const Digraph& shape) {
    std::vector<std::string> values;
    const auto& edges = shape.arcs();
    for (std::uint64_t o = 0; o < (std::uint64_t{1} << edges.size()); ++o) {
      std::vector<std::pair<int, int>> arcs;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        arcs.push_back((o >> e) & 1U ? std::pair{v, u} : std::pair{u, v});
      }
      values.push_back(xgt_bytes(Digraph(shape.size(), std::move(arcs))));
    }
    std::sort(values.begin(), values.end());
    return nlohmann::json(values).dump();
  };
  std::function<CanonicalKey(const Digraph&)> key = [](const Digraph& shape) {
    return CanonicalKey{"U" + free_tree_key(FreeTree{shape.size(), shape.arcs()})};
  };
  return collision_scan<Digraph>("free_tree", n, objects, "multiset_X_t", f, key, opt);
}

}  // namespace qsymtree
