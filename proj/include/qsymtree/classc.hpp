#pragma once

// Fair trees and the class C: labeled posets built from [1] by disjoint union
// and one-element weak/strict ordinal sums on either side.

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "invariants.hpp"
#include "poset.hpp"

namespace qsymtree {

namespace detail {

/// Uniform strictness of the covers from v to the elements of `targets`.
inline bool uniform_covers(const LabeledPoset& p, int v, Mask targets, bool v_is_lower) {
  std::optional<Strictness> seen;
  for (Mask r = targets; r; r &= r - 1) {
    int w = std::countr_zero(r);
    auto s = v_is_lower ? p.cover_type(v, w) : p.cover_type(w, v);
    if (!s) return false;
    if (seen && *seen != *s) return false;
    seen = s;
  }
  return true;
}

/// Components of the subposet induced on a convex set.
inline std::vector<Mask> components_within(const LabeledPoset& p, Mask s) {
  std::vector<Mask> out;
  Mask seen = 0;
  for (Mask r = s; r; r &= r - 1) {
    int start = std::countr_zero(r);
    if (seen & bit(start)) continue;
    Mask comp = bit(start);
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      auto visit = [&](int w) {
        if ((s & bit(w)) && !(comp & bit(w))) {
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

}  // namespace detail

/// Rooted tree (unique minimal element) whose every element has uniformly
/// strict or uniformly weak edges to its children.
inline bool is_fair_tree(const LabeledPoset& p) {
  if (!is_tree(p) || std::popcount(p.minimal_elements()) != 1) return false;
  for (int v = 0; v < p.size(); ++v) {
    Mask kids = 0;
    for (int w : p.upper_covers(v)) kids |= bit(w);
    if (!detail::uniform_covers(p, v, kids, true)) return false;
  }
  return true;
}

/// Decides membership by undoing the constructions: split components, or
/// peel a unique minimum (maximum) joined uniformly to the rest.
inline bool is_in_class_C_recursive(const LabeledPoset& p) {
  std::map<Mask, bool> memo;
  auto rec = [&](auto&& self, Mask s) -> bool {
    if (std::popcount(s) <= 1) return true;
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    bool ok = false;
    auto comps = detail::components_within(p, s);
    if (comps.size() > 1) {
      ok = std::all_of(comps.begin(), comps.end(), [&](Mask c) { return self(self, c); });
    } else {
      Mask mins = minimal_within(p, s);
      if (std::popcount(mins) == 1) {
        int m = std::countr_zero(mins);
        Mask rest = s & ~mins;
        ok = detail::uniform_covers(p, m, minimal_within(p, rest), true) && self(self, rest);
      }
      Mask maxs = maximal_within(p, s);
      if (!ok && std::popcount(maxs) == 1) {
        int m = std::countr_zero(maxs);
        Mask rest = s & ~maxs;
        ok = detail::uniform_covers(p, m, maximal_within(p, rest), false) && self(self, rest);
      }
    }
    memo[s] = ok;
    return ok;
  };
  return rec(rec, p.all());
}

/// Induced bowtie a1,a2 < b1,b2 or N a1 < b1 > a2 < b2 (with a1, b2
/// incomparable), both read on the full order.
inline bool has_bowtie_or_n(const LabeledPoset& p) {
  const int n = p.size();
  auto inc = [&](int x, int y) { return !p.comparable(x, y); };
  for (int b1 = 0; b1 < n; ++b1) {
    for (int b2 = 0; b2 < n; ++b2) {
      if (b1 == b2 || !inc(b1, b2)) continue;
      Mask both = p.below(b1) & p.below(b2);
      Mask only1 = p.below(b1) & ~p.below(b2);
      for (Mask r = p.below(b1); r; r &= r - 1) {
        int a2 = std::countr_zero(r);
        if (!(both & bit(a2))) continue;
        // bowtie: another a1 below both, incomparable to a2
        for (Mask t = both; t; t &= t - 1) {
          int a1 = std::countr_zero(t);
          if (a1 != a2 && inc(a1, a2)) return true;
        }
        // N: a1 below b1 only, incomparable to a2
        for (Mask t = only1; t; t &= t - 1) {
          int a1 = std::countr_zero(t);
          if (inc(a1, a2)) return true;
        }
      }
    }
  }
  return false;
}

/// Convex labeled 3-element V or wedge with one weak and one strict edge:
/// an element whose upper (lower) covers are not uniform.
inline bool has_mixed_vee_or_wedge(const LabeledPoset& p) {
  for (int v = 0; v < p.size(); ++v) {
    Mask up = 0, down = 0;
    for (int w : p.upper_covers(v)) up |= bit(w);
    for (int w : p.lower_covers(v)) down |= bit(w);
    if (!detail::uniform_covers(p, v, up, true) || !detail::uniform_covers(p, v, down, false)) return true;
  }
  return false;
}

inline bool is_in_class_C_patterns(const LabeledPoset& p) { return !has_bowtie_or_n(p) && !has_mixed_vee_or_wedge(p); }

/// Both deciders; a disagreement is an internal error.
inline bool is_in_class_C(const LabeledPoset& p) {
  bool a = is_in_class_C_recursive(p);
  bool b = is_in_class_C_patterns(p);
  if (a != b) throw std::logic_error("class C deciders disagree");
  return a;
}

}  // namespace qsymtree
