#pragma once

// Necessary-condition invariants of posets: jumps, order-ideal and antichain
// statistics, Greene shape, pointed P-partitions, and the leading monomial.

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "poset.hpp"

namespace qsymtree {

/// Longest chain (in edges) from each element down to a minimal element.
/// With `strict_only`, only strict covers along the chain are counted.
inline std::vector<int> element_jumps(const LabeledPoset& p, bool strict_only = false) {
  std::vector<int> jump(p.size(), -1);
  auto rec = [&](auto&& self, int v) -> int {
    if (jump[v] >= 0) return jump[v];
    int best = 0;
    for (int w : p.lower_covers(v)) {
      int step = strict_only ? (p.cover_type(w, v) == Strictness::Strict ? 1 : 0) : 1;
      best = std::max(best, self(self, w) + step);
    }
    return jump[v] = best;
  };
  for (int v = 0; v < p.size(); ++v) rec(rec, v);
  return jump;
}

inline std::vector<int> element_up_jumps(const LabeledPoset& p) { return element_jumps(dual(p)); }

/// Entry i counts elements of jump i.
inline std::vector<int> jump_vector(const LabeledPoset& p, bool strict_only = false) {
  std::vector<int> counts;
  for (int j : element_jumps(p, strict_only)) {
    if (j >= static_cast<int>(counts.size())) counts.resize(j + 1, 0);
    ++counts[j];
  }
  return counts;
}

/// (jump, up-jump) -> number of elements.
inline std::map<std::pair<int, int>, int> jump_pairs(const LabeledPoset& p) {
  std::map<std::pair<int, int>, int> out;
  auto down = element_jumps(p);
  auto up = element_up_jumps(p);
  for (int v = 0; v < p.size(); ++v) ++out[{down[v], up[v]}];
  return out;
}

inline constexpr int kIdealGuardN = 24;

/// All order ideals, as masks, sorted.
inline std::vector<Mask> order_ideals(const LabeledPoset& p) {
  guard::check(p.size(), guard::max_n(kIdealGuardN), "order_ideals");
  std::unordered_set<Mask> seen{0};
  std::vector<Mask> stack{0};
  while (!stack.empty()) {
    Mask ideal = stack.back();
    stack.pop_back();
    for (int y = 0; y < p.size(); ++y) {
      if ((ideal & bit(y)) || (p.below(y) & ~ideal)) continue;
      Mask next = ideal | bit(y);
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  std::vector<Mask> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Maximal elements of the induced subposet on `s`.
inline Mask maximal_within(const LabeledPoset& p, Mask s) {
  Mask out = 0;
  for (Mask r = s; r; r &= r - 1) {
    int v = std::countr_zero(r);
    if ((p.above(v) & s) == 0) out |= bit(v);
  }
  return out;
}

inline Mask minimal_within(const LabeledPoset& p, Mask s) {
  Mask out = 0;
  for (Mask r = s; r; r &= r - 1) {
    int v = std::countr_zero(r);
    if ((p.below(v) & s) == 0) out |= bit(v);
  }
  return out;
}

/// (k, i, j) -> number of k-element order ideals I with i maximal elements
/// and whose complement has j minimal elements.
using AntiTable = std::map<std::tuple<int, int, int>, long long>;

inline AntiTable anti_table(const LabeledPoset& p) {
  AntiTable t;
  const Mask all = p.all();
  for (Mask ideal : order_ideals(p)) {
    int k = std::popcount(ideal);
    int i = std::popcount(maximal_within(p, ideal));
    int j = std::popcount(minimal_within(p, all & ~ideal));
    ++t[{k, i, j}];
  }
  return t;
}

/// Antichain size -> count, by direct enumeration of antichains.
inline std::map<int, long long> antichain_counts(const LabeledPoset& p) {
  guard::check(p.size(), guard::max_n(kIdealGuardN), "antichain_counts");
  std::map<int, long long> out;
  auto rec = [&](auto&& self, int start, Mask chosen, int size) -> void {
    ++out[size];
    for (int v = start; v < p.size(); ++v) {
      if ((p.below(v) | p.above(v)) & chosen) continue;
      self(self, v + 1, chosen | bit(v), size + 1);
    }
  };
  rec(rec, 0, 0, 0);
  return out;
}

/// Antichain counts recovered from the table: antichains correspond to the
/// maximal-element sets of order ideals.
inline std::map<int, long long> antichain_counts_from_table(const AntiTable& t) {
  std::map<int, long long> out;
  for (const auto& [key, c] : t) out[std::get<1>(key)] += c;
  return out;
}

inline constexpr int kGreeneGuardN = 16;

/// Maximal chains as element masks.
inline std::vector<Mask> maximal_chains(const LabeledPoset& p) {
  std::vector<Mask> out;
  auto rec = [&](auto&& self, int v, Mask acc) -> void {
    acc |= bit(v);
    if (p.upper_covers(v).empty()) {
      out.push_back(acc);
      return;
    }
    for (int w : p.upper_covers(v)) self(self, w, acc);
  };
  for (Mask m = p.minimal_elements(); m; m &= m - 1) rec(rec, std::countr_zero(m), 0);
  return out;
}

/// Partition (c1 - c0, c2 - c1, ...) where c_k is the largest union of k
/// chains. Unions of maximal chains suffice, searched with a size bound.
inline std::vector<int> greene_shape(const LabeledPoset& p) {
  guard::check(p.size(), guard::max_n(kGreeneGuardN), "greene_shape");
  std::vector<Mask> chains = maximal_chains(p);
  std::sort(chains.begin(), chains.end(),
            [](Mask a, Mask b) { return std::popcount(a) > std::popcount(b) || (std::popcount(a) == std::popcount(b) && a < b); });
  std::vector<int> shape;
  int prev = 0;
  for (int k = 1; prev < p.size(); ++k) {
    int best = prev;  // c_k >= c_{k-1}
    auto rec = [&](auto&& self, std::size_t start, int left, Mask uni) -> void {
      int have = std::popcount(uni);
      best = std::max(best, have);
      if (left == 0 || best == p.size()) return;
      for (std::size_t i = start; i < chains.size(); ++i) {
        // Chains are sorted by size, so this bounds every later choice too.
        if (have + left * std::popcount(chains[i]) <= best) return;
        self(self, i + 1, left - 1, uni | chains[i]);
      }
    };
    rec(rec, 0, k, 0);
    shape.push_back(best - prev);
    prev = best;
  }
  return shape;
}

/// Whether an order-preserving surjection f: P -> [l] exists with
/// |f^{-1}(i)| = w_i and every fiber having a unique minimal element.
/// Strict covers may not lie inside a fiber.
inline bool pointed_partition_exists(const LabeledPoset& p, const Composition& w) {
  if (w.weight() != p.size()) throw std::invalid_argument("weight of w must equal |P|");
  guard::check(p.size(), guard::max_n(kIdealGuardN), "pointed_partition_exists");
  const Mask all = p.all();
  std::unordered_set<std::uint64_t> failed;
  auto block_ok = [&](Mask b) {
    if (std::popcount(minimal_within(p, b)) != 1) return false;
    for (const Cover& c : p.covers()) {
      if (c.strictness == Strictness::Strict && (b & bit(c.lower)) && (b & bit(c.upper))) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, Mask ideal, std::size_t part) -> bool {
    if (part == w.length()) return ideal == all;
    std::uint64_t key = ideal * 64 + part;
    if (failed.count(key)) return false;
    // Choose the next fiber as a w[part]-subset of the remaining elements.
    std::vector<int> rest;
    for (int v = 0; v < p.size(); ++v)
      if (!(ideal & bit(v))) rest.push_back(v);
    const int need = w[part];
    bool found = false;
    auto choose = [&](auto&& me, std::size_t from, int left, Mask b) -> void {
      if (found) return;
      if (left == 0) {
        if (p.is_order_ideal(ideal | b) && block_ok(b) && self(self, ideal | b, part + 1)) found = true;
        return;
      }
      for (std::size_t i = from; i + left <= rest.size(); ++i) {
        me(me, i + 1, left - 1, b | bit(rest[i]));
        if (found) return;
      }
    };
    choose(choose, 0, need, 0);
    if (!found) failed.insert(key);
    return found;
  };
  return rec(rec, 0, 0);
}

struct LeadingTerm {
  std::vector<int> exponent;  // x_1^{e_1} x_2^{e_2} ...
  Integer coefficient;
  std::vector<int> jump;  // strict-edge jump vector
  bool matches = false;
};

/// Lexicographically leading monomial of K_(P,omega) against x^{jump}, where
/// the jump of an element counts strict covers on its longest way down.
inline LeadingTerm leading_term_check(const LabeledPoset& p) {
  QSymExpr m = f_to_m(enumerator_f(p));
  LeadingTerm out;
  out.jump = jump_vector(p, /*strict_only=*/true);
  if (m.is_zero()) return out;
  // The lexicographically largest monomial of M_alpha is x^alpha itself, and
  // std::map order on compositions is that same lexicographic order.
  const auto& [alpha, c] = *m.terms().rbegin();
  out.exponent = alpha.vec();
  out.coefficient = c;
  out.matches = out.exponent == out.jump && c == 1;
  return out;
}

}  // namespace qsymtree
