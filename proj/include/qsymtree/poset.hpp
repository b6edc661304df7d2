#pragma once

// Labeled posets: Hasse diagrams whose covers are marked strict or weak.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "qsym.hpp"

namespace qsymtree {

enum class Strictness : std::uint8_t { Weak, Strict };

inline char strictness_char(Strictness s) { return s == Strictness::Weak ? 'W' : 'S'; }
inline Strictness flipped(Strictness s) { return s == Strictness::Weak ? Strictness::Strict : Strictness::Weak; }

/// `lower` is covered by `upper`. Elements are 0-based.
struct Cover {
  int lower;
  int upper;
  Strictness strictness;

  friend auto operator<=>(const Cover&, const Cover&) = default;
};

using Mask = std::uint64_t;

inline constexpr int kMaxPosetSize = 64;

inline Mask bit(int i) { return Mask{1} << i; }

/// A finite poset on {0, ..., n-1} given by its cover relations, each marked
/// strict or weak. Immutable after construction; the constructor rejects
/// cycles, repeated pairs and covers implied by other covers.
class LabeledPoset {
public:
  LabeledPoset() = default;

  LabeledPoset(int n, std::vector<Cover> covers) : n_(n), covers_(std::move(covers)) {
    if (n < 0 || n > kMaxPosetSize) throw std::invalid_argument("poset size must be in [0, 64]");
    std::sort(covers_.begin(), covers_.end());
    up_.assign(n, {});
    down_.assign(n, {});
    for (std::size_t i = 0; i < covers_.size(); ++i) {
      const Cover& c = covers_[i];
      if (c.lower < 0 || c.lower >= n || c.upper < 0 || c.upper >= n) {
        throw std::invalid_argument("cover endpoint out of range");
      }
      if (c.lower == c.upper) throw std::invalid_argument("self-cover");
      if (i > 0 && covers_[i - 1].lower == c.lower && covers_[i - 1].upper == c.upper) {
        throw std::invalid_argument("repeated cover " + std::to_string(c.lower + 1) + " " +
                                    std::to_string(c.upper + 1));
      }
      up_[c.lower].push_back(c.upper);
      down_[c.upper].push_back(c.lower);
    }
    build_closure();
    for (const Cover& c : covers_) {
      // A cover must not be implied through another element.
      for (int w : up_[c.lower]) {
        if (w != c.upper && (above_[w] & bit(c.upper))) {
          throw std::invalid_argument("pair " + std::to_string(c.lower + 1) + " " + std::to_string(c.upper + 1) +
                                      " is not a cover (implied through " + std::to_string(w + 1) + ")");
        }
      }
    }
  }

  int size() const noexcept { return n_; }
  const std::vector<Cover>& covers() const noexcept { return covers_; }
  const std::vector<int>& upper_covers(int v) const { return up_[v]; }
  const std::vector<int>& lower_covers(int v) const { return down_[v]; }

  /// Elements strictly below / above v.
  Mask below(int v) const { return below_[v]; }
  Mask above(int v) const { return above_[v]; }
  bool less(int a, int b) const { return (above_[a] >> b) & 1U; }
  bool comparable(int a, int b) const { return a == b || less(a, b) || less(b, a); }

  Mask all() const { return n_ == 64 ? ~Mask{0} : bit(n_) - 1; }

  std::optional<Strictness> cover_type(int lower, int upper) const {
    auto it = std::lower_bound(covers_.begin(), covers_.end(), Cover{lower, upper, Strictness::Weak});
    if (it != covers_.end() && it->lower == lower && it->upper == upper) return it->strictness;
    return std::nullopt;
  }

  Mask minimal_elements() const {
    Mask m = 0;
    for (int v = 0; v < n_; ++v)
      if (down_[v].empty()) m |= bit(v);
    return m;
  }
  Mask maximal_elements() const {
    Mask m = 0;
    for (int v = 0; v < n_; ++v)
      if (up_[v].empty()) m |= bit(v);
    return m;
  }

  bool is_order_ideal(Mask ideal) const {
    for (Mask r = ideal; r; r &= r - 1) {
      int v = std::countr_zero(r);
      if ((below_[v] & ~ideal) != 0) return false;
    }
    return true;
  }

  bool all_covers(Strictness s) const {
    return std::all_of(covers_.begin(), covers_.end(), [s](const Cover& c) { return c.strictness == s; });
  }

  friend bool operator==(const LabeledPoset& a, const LabeledPoset& b) {
    return a.n_ == b.n_ && a.covers_ == b.covers_;
  }

private:
  void build_closure() {
    below_.assign(n_, 0);
    above_.assign(n_, 0);
    // Kahn order on covers; leftover elements mean a cycle.
    std::vector<int> indeg(n_, 0), order;
    for (const Cover& c : covers_) ++indeg[c.upper];
    for (int v = 0; v < n_; ++v)
      if (indeg[v] == 0) order.push_back(v);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int w : up_[order[i]])
        if (--indeg[w] == 0) order.push_back(w);
    }
    if (static_cast<int>(order.size()) != n_) throw std::invalid_argument("cover relation has a cycle");
    for (int v : order) {
      for (int w : down_[v]) below_[v] |= below_[w] | bit(w);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      for (int w : up_[*it]) above_[*it] |= above_[w] | bit(w);
    }
  }

  int n_ = 0;
  std::vector<Cover> covers_;
  std::vector<std::vector<int>> up_, down_;
  std::vector<Mask> below_, above_;
};

/// A bijection omega: elements -> {1..n}; labels_[v] is omega(v).
struct Labeling {
  std::vector<int> labels;

  int operator()(int v) const { return labels[v]; }
  friend bool operator==(const Labeling&, const Labeling&) = default;
};

/// True when omega is a bijection onto [n] that decreases along strict
/// covers and increases along weak covers.
inline bool is_consistent(const LabeledPoset& p, const Labeling& omega) {
  if (static_cast<int>(omega.labels.size()) != p.size()) return false;
  std::vector<int> seen(p.size() + 1, 0);
  for (int l : omega.labels) {
    if (l < 1 || l > p.size() || seen[l]++) return false;
  }
  for (const Cover& c : p.covers()) {
    bool dec = omega(c.lower) > omega(c.upper);
    if (dec != (c.strictness == Strictness::Strict)) return false;
  }
  return true;
}

/// Labels a topological order of the constraint digraph (weak a<b means
/// omega(a) < omega(b), strict means omega(a) > omega(b)).
inline Labeling realize_labeling(const LabeledPoset& p) {
  const int n = p.size();
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (const Cover& c : p.covers()) {
    int from = c.strictness == Strictness::Weak ? c.lower : c.upper;
    int to = c.strictness == Strictness::Weak ? c.upper : c.lower;
    succ[from].push_back(to);
    ++indeg[to];
  }
  Labeling omega{std::vector<int>(n, 0)};
  // Smallest available element first keeps the labeling deterministic.
  std::vector<int> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  int next = 1;
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    int v = *it;
    ready.erase(it);
    omega.labels[v] = next++;
    for (int w : succ[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  if (next != n + 1) throw DomainError("unrealizable strictness assignment");
  return omega;
}

inline bool is_realizable(const LabeledPoset& p) {
  try {
    realize_labeling(p);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

/// Lazy backtracking over minimal elements; yields each linear extension
/// once, as the word of omega-labels in extension order.
class LinearExtensionStream {
public:
  LinearExtensionStream(LabeledPoset p, Labeling omega) : p_(std::move(p)), omega_(std::move(omega)) {
    if (!is_consistent(p_, omega_)) throw std::invalid_argument("labeling inconsistent with poset");
  }

  std::optional<std::vector<int>> next() {
    const int n = p_.size();
    if (done_) return std::nullopt;
    if (!started_) {
      started_ = true;
      if (!descend(0)) {
        done_ = true;
        if (n == 0) return std::vector<int>{};
        return std::nullopt;
      }
      return word();
    }
    // Advance: pop until some level has another candidate.
    while (!chosen_.empty()) {
      int v = chosen_.back();
      chosen_.pop_back();
      placed_ &= ~bit(v);
      Mask cand = candidates() & ~((bit(v) << 1) - 1);
      if (cand) {
        int w = std::countr_zero(cand);
        chosen_.push_back(w);
        placed_ |= bit(w);
        if (descend(static_cast<int>(chosen_.size()))) return word();
      }
    }
    done_ = true;
    return std::nullopt;
  }

private:
  Mask candidates() const {
    Mask c = 0;
    for (int v = 0; v < p_.size(); ++v) {
      if (!(placed_ & bit(v)) && (p_.below(v) & ~placed_) == 0) c |= bit(v);
    }
    return c;
  }

  // Completes the current prefix greedily with smallest candidates.
  bool descend(int depth) {
    const int n = p_.size();
    for (int d = depth; d < n; ++d) {
      Mask c = candidates();
      if (!c) return false;
      int w = std::countr_zero(c);
      chosen_.push_back(w);
      placed_ |= bit(w);
    }
    return n > 0;
  }

  std::vector<int> word() const {
    std::vector<int> w;
    w.reserve(chosen_.size());
    for (int v : chosen_) w.push_back(omega_(v));
    return w;
  }

  LabeledPoset p_;
  Labeling omega_;
  std::vector<int> chosen_;
  Mask placed_ = 0;
  bool started_ = false;
  bool done_ = false;
};

namespace detail {

/// Sums descent masks of omega-words over linear extensions, memoized on
/// (order ideal placed so far, last placed element).
class ExtensionDescentDP {
public:
  ExtensionDescentDP(const LabeledPoset& p, const Labeling& omega) : p_(p), omega_(omega) {}

  DescentTable run() {
    DescentTable out;
    if (p_.size() == 0) return out;
    for (Mask m = p_.minimal_elements(); m; m &= m - 1) {
      int y = std::countr_zero(m);
      for (const auto& [mask, c] : suffix(bit(y), y)) out[mask] += c;
    }
    return out;
  }

private:
  const DescentTable& suffix(Mask ideal, int last) {
    std::uint64_t key = (ideal << 6) | static_cast<std::uint64_t>(last);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    DescentTable out;
    if (ideal == p_.all()) {
      out.emplace(0, 1);
    } else {
      for (int y = 0; y < p_.size(); ++y) {
        if ((ideal & bit(y)) || (p_.below(y) & ~ideal)) continue;
        std::uint64_t d = omega_(last) > omega_(y) ? 1 : 0;
        for (const auto& [mask, c] : suffix(ideal | bit(y), y)) out[(mask << 1) | d] += c;
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  const LabeledPoset& p_;
  const Labeling& omega_;
  std::unordered_map<std::uint64_t, DescentTable> memo_;
};

inline constexpr int kEnumeratorMaxN = 20;  // n! < 2^63 keeps the counts exact

}  // namespace detail

/// K_(P,omega) = sum over linear extensions pi of F_co(pi), for a given
/// consistent labeling.
inline QSymExpr enumerator_f(const LabeledPoset& p, const Labeling& omega) {
  guard::check(p.size(), detail::kEnumeratorMaxN, "enumerator_f");
  if (!is_consistent(p, omega)) throw std::invalid_argument("labeling inconsistent with poset");
  if (p.size() == 0) return QSymExpr::one(Basis::F);
  QSymExpr out(Basis::F);
  for (const auto& [mask, c] : detail::ExtensionDescentDP(p, omega).run()) {
    out.add_term(Composition::from_descent_mask(mask, p.size()), Integer(static_cast<unsigned long>(c)));
  }
  return out;
}

/// K_(P,omega) for the strictness assignment stored on P's covers.
inline QSymExpr enumerator_f(const LabeledPoset& p) { return enumerator_f(p, realize_labeling(p)); }

inline Integer linear_extension_count(const LabeledPoset& p) {
  guard::check(p.size(), detail::kEnumeratorMaxN, "linear_extension_count");
  std::unordered_map<Mask, Integer> ways;
  ways[0] = 1;
  for (int step = 0; step < p.size(); ++step) {
    std::unordered_map<Mask, Integer> next;
    for (const auto& [ideal, c] : ways) {
      for (int y = 0; y < p.size(); ++y) {
        if ((ideal & bit(y)) || (p.below(y) & ~ideal)) continue;
        next[ideal | bit(y)] += c;
      }
    }
    ways = std::move(next);
  }
  return p.size() == 0 ? Integer(1) : ways[p.all()];
}

/// Counts maps f: P -> {0..k-1}, weakly increasing on weak covers and strictly
/// on strict covers, graded by sum f(p). Works for unrealizable assignments.
inline QPolynomial partition_count_oracle(const LabeledPoset& p, int k, double cap = 2e8) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (std::pow(static_cast<double>(k), p.size()) > cap) {
    throw GuardError("partition_count_oracle: k^n exceeds cap");
  }
  const int n = p.size();
  // Topological order so every lower cover is assigned first.
  std::vector<int> order;
  Mask placed = 0;
  while (static_cast<int>(order.size()) < n) {
    for (int v = 0; v < n; ++v) {
      if (!(placed & bit(v)) && (p.below(v) & ~placed) == 0) {
        order.push_back(v);
        placed |= bit(v);
        break;
      }
    }
  }
  std::vector<int> f(n, 0);
  std::vector<std::uint64_t> by_sum(static_cast<std::size_t>(n) * (k - 1) + 1, 0);
  auto rec = [&](auto&& self, int idx, int sum) -> void {
    if (idx == n) {
      ++by_sum[sum];
      return;
    }
    int v = order[idx];
    int lo = 0;
    for (int w : p.lower_covers(v)) {
      int need = f[w] + (p.cover_type(w, v) == Strictness::Strict ? 1 : 0);
      lo = std::max(lo, need);
    }
    for (int val = lo; val < k; ++val) {
      f[v] = val;
      self(self, idx + 1, sum + val);
    }
  };
  rec(rec, 0, 0);
  QPolynomial out;
  for (std::size_t e = 0; e < by_sum.size(); ++e) {
    if (by_sum[e]) out.add_term(static_cast<int>(e), Integer(static_cast<unsigned long>(by_sum[e])));
  }
  return out;
}

/// Same Hasse diagram with every cover set to `s`.
inline LabeledPoset with_all(const LabeledPoset& p, Strictness s) {
  std::vector<Cover> cs = p.covers();
  for (Cover& c : cs) c.strictness = s;
  return {p.size(), std::move(cs)};
}
inline LabeledPoset all_weak(const LabeledPoset& p) { return with_all(p, Strictness::Weak); }
inline LabeledPoset all_strict(const LabeledPoset& p) { return with_all(p, Strictness::Strict); }

/// Bar operation: swaps strict and weak on every cover.
inline LabeledPoset flip_strictness(const LabeledPoset& p) {
  std::vector<Cover> cs = p.covers();
  for (Cover& c : cs) c.strictness = flipped(c.strictness);
  return {p.size(), std::move(cs)};
}

/// Reverses every cover, keeping its mark.
inline LabeledPoset dual(const LabeledPoset& p) {
  std::vector<Cover> cs;
  for (const Cover& c : p.covers()) cs.push_back({c.upper, c.lower, c.strictness});
  return {p.size(), std::move(cs)};
}

inline LabeledPoset disjoint_union(const LabeledPoset& p, const LabeledPoset& q) {
  std::vector<Cover> cs = p.covers();
  for (const Cover& c : q.covers()) cs.push_back({c.lower + p.size(), c.upper + p.size(), c.strictness});
  return {p.size() + q.size(), std::move(cs)};
}

/// P below Q with a cover of type `s` from each maximal element of P to
/// each minimal element of Q.
inline LabeledPoset ordinal_sum(const LabeledPoset& p, const LabeledPoset& q, Strictness s) {
  LabeledPoset u = disjoint_union(p, q);
  std::vector<Cover> cs = u.covers();
  for (Mask a = p.maximal_elements(); a; a &= a - 1) {
    for (Mask b = q.minimal_elements(); b; b &= b - 1) {
      cs.push_back({std::countr_zero(a), std::countr_zero(b) + p.size(), s});
    }
  }
  return {u.size(), std::move(cs)};
}
inline LabeledPoset ordsum_weak(const LabeledPoset& p, const LabeledPoset& q) {
  return ordinal_sum(p, q, Strictness::Weak);
}
inline LabeledPoset ordsum_strict(const LabeledPoset& p, const LabeledPoset& q) {
  return ordinal_sum(p, q, Strictness::Strict);
}

inline LabeledPoset singleton() { return {1, {}}; }

inline LabeledPoset chain(int n, Strictness s) {
  std::vector<Cover> cs;
  for (int i = 0; i + 1 < n; ++i) cs.push_back({i, i + 1, s});
  return {n, std::move(cs)};
}

inline LabeledPoset antichain(int n) { return {n, {}}; }

/// Labeled chain whose enumerator is F_alpha: weak covers within each part,
/// strict covers between consecutive parts, bottom to top.
inline LabeledPoset chain_for(const Composition& alpha) {
  std::vector<Cover> cs;
  int pos = 0;
  for (std::size_t i = 0; i < alpha.length(); ++i) {
    for (int j = 0; j < alpha[i]; ++j, ++pos) {
      if (pos == 0) continue;
      cs.push_back({pos - 1, pos, j == 0 ? Strictness::Strict : Strictness::Weak});
    }
  }
  return {alpha.weight(), std::move(cs)};
}

/// Subposet induced on `keep`, renumbered in increasing element order.
/// Only valid when no removed element lies between two kept ones (convex),
/// so covers of the result are covers of P.
inline LabeledPoset convex_subposet(const LabeledPoset& p, Mask keep) {
  std::vector<int> index(p.size(), -1);
  int m = 0;
  for (int v = 0; v < p.size(); ++v)
    if (keep & bit(v)) index[v] = m++;
  std::vector<Cover> cs;
  for (const Cover& c : p.covers()) {
    if (index[c.lower] >= 0 && index[c.upper] >= 0) cs.push_back({index[c.lower], index[c.upper], c.strictness});
  }
  return {m, std::move(cs)};
}

/// Connected components of the Hasse diagram as element masks, ordered by
/// smallest element.
inline std::vector<Mask> components(const LabeledPoset& p) {
  std::vector<Mask> out;
  Mask seen = 0;
  for (int s = 0; s < p.size(); ++s) {
    if (seen & bit(s)) continue;
    Mask comp = bit(s);
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      auto visit = [&](int w) {
        if (!(comp & bit(w))) {
          comp |= bit(w);
          stack.push_back(w);
        }
      };
      for (int w : p.upper_covers(v)) visit(w);
      for (int w : p.lower_covers(v)) visit(w);
    }
    seen |= comp;
    out.push_back(comp);
  }
  return out;
}

/// Hasse diagram is a (connected) tree.
inline bool is_tree(const LabeledPoset& p) {
  return p.size() >= 1 && static_cast<int>(p.covers().size()) == p.size() - 1 && components(p).size() == 1;
}

inline bool is_forest(const LabeledPoset& p) {
  return static_cast<int>(p.covers().size()) + static_cast<int>(components(p).size()) == p.size();
}

}  // namespace qsymtree
