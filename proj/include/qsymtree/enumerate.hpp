#pragma once

// Duplicate-free generation of the tree families the conjectures range over.

#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "canonical.hpp"
#include "classc.hpp"
#include "digraph.hpp"
#include "poset.hpp"

namespace qsymtree {

inline constexpr int kTreeGuardN = 12;

struct FreeTree {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

namespace detail {

/// parent[v] for v > 0, parent[0] = -1, children numbered after parents.
using ParentArray = std::vector<int>;

/// Rooted unlabeled trees with s vertices for s = 0..n, each generated once:
/// a tree is its root plus a non-increasing multiset of (size, index) subtrees.
inline const std::vector<std::vector<ParentArray>>& rooted_shapes(int n) {
  static std::vector<std::vector<ParentArray>> shapes{{}, {ParentArray{-1}}};
  static std::mutex lock;
  std::lock_guard<std::mutex> hold(lock);
  while (static_cast<int>(shapes.size()) <= n) {
    const int s = static_cast<int>(shapes.size());
    std::vector<ParentArray> out;
    std::vector<std::pair<int, int>> kids;  // (size, index), non-increasing
    auto rec = [&](auto&& self, int left, std::pair<int, int> cap) -> void {
      if (left == 0) {
        ParentArray p{-1};
        for (auto [size, idx] : kids) {
          const ParentArray& sub = shapes[size][idx];
          int base = static_cast<int>(p.size());
          for (int v = 0; v < size; ++v) p.push_back(sub[v] < 0 ? 0 : sub[v] + base);
        }
        out.push_back(std::move(p));
        return;
      }
      for (int size = std::min(left, cap.first); size >= 1; --size) {
        int top = size == cap.first ? cap.second : static_cast<int>(shapes[size].size()) - 1;
        for (int idx = top; idx >= 0; --idx) {
          kids.push_back({size, idx});
          self(self, left - size, std::pair{size, idx});
          kids.pop_back();
        }
      }
    };
    rec(rec, s - 1, {s - 1, s > 1 ? static_cast<int>(shapes[s - 1].size()) - 1 : 0});
    shapes.push_back(std::move(out));
  }
  return shapes;
}

inline AnnotatedTree plain_tree(const FreeTree& t) {
  AnnotatedTree a;
  a.adj.assign(t.n, {});
  for (auto [u, v] : t.edges) {
    a.adj[u].push_back({v, 'e'});
    a.adj[v].push_back({u, 'e'});
  }
  return a;
}

}  // namespace detail

/// Canonical encoding of an unlabeled free tree.
inline std::string free_tree_key(const FreeTree& t) { return detail::free_tree_code(detail::plain_tree(t)); }

/// Rooted trees as posets: root minimal, children above parents, all weak.
inline std::vector<LabeledPoset> gen_rooted_tree_posets(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  guard::check(n, guard::max_n(kTreeGuardN), "gen_rooted_tree_posets");
  std::vector<LabeledPoset> out;
  for (const auto& p : detail::rooted_shapes(n)[n]) {
    std::vector<Cover> cs;
    for (int v = 1; v < n; ++v) cs.push_back({p[v], v, Strictness::Weak});
    out.emplace_back(n, std::move(cs));
  }
  return out;
}

/// One tree per isomorphism class, from rooted shapes deduplicated by the
/// centroid encoding.
inline std::vector<FreeTree> gen_free_trees(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  guard::check(n, guard::max_n(kTreeGuardN), "gen_free_trees");
  std::vector<FreeTree> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : detail::rooted_shapes(n)[n]) {
    FreeTree t{n, {}};
    for (int v = 1; v < n; ++v) t.edges.push_back({p[v], v});
    if (seen.insert(free_tree_key(t)).second) out.push_back(std::move(t));
  }
  return out;
}

/// Every orientation of every free tree, as an all-weak poset, one per class.
inline std::vector<LabeledPoset> gen_tree_posets(int n) {
  std::vector<LabeledPoset> out;
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
  for (const FreeTree& t : gen_free_trees(n)) {
    const std::size_t m = t.edges.size();
    for (std::uint64_t orient = 0; orient < (std::uint64_t{1} << m); ++orient) {
      std::vector<Cover> cs;
      for (std::size_t e = 0; e < m; ++e) {
        auto [u, v] = t.edges[e];
        if ((orient >> e) & 1U) std::swap(u, v);
        cs.push_back({u, v, Strictness::Weak});
      }
      LabeledPoset p(n, std::move(cs));
      if (seen.insert(canonical_key(p)).second) out.push_back(std::move(p));
    }
  }
  return out;
}

enum class LabelPolicy { AllStrict, AllWeak, AllAssignments, Fair };

/// Strictness assignments of each base poset, deduplicated up to isomorphism.
inline std::vector<LabeledPoset> gen_labeled_variants(const std::vector<LabeledPoset>& base, LabelPolicy policy) {
  std::vector<LabeledPoset> out;
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
  auto emit = [&](LabeledPoset p) {
    if (policy == LabelPolicy::Fair && !is_fair_tree(p)) return;
    if (seen.insert(canonical_key(p)).second) out.push_back(std::move(p));
  };
  for (const LabeledPoset& b : base) {
    switch (policy) {
      case LabelPolicy::AllStrict: emit(all_strict(b)); break;
      case LabelPolicy::AllWeak: emit(all_weak(b)); break;
      case LabelPolicy::AllAssignments:
      case LabelPolicy::Fair: {
        const std::size_t m = b.covers().size();
        if (m >= 63) throw GuardError("too many covers for assignment enumeration");
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
          std::vector<Cover> cs = b.covers();
          for (std::size_t e = 0; e < m; ++e) cs[e].strictness = ((s >> e) & 1U) ? Strictness::Strict : Strictness::Weak;
          emit(LabeledPoset(b.size(), std::move(cs)));
        }
        break;
      }
    }
  }
  return out;
}

/// Arcs point from the lower to the upper element of each cover.
inline Digraph poset_to_digraph(const LabeledPoset& p) {
  std::vector<std::pair<int, int>> arcs;
  for (const Cover& c : p.covers()) arcs.push_back({c.lower, c.upper});
  return {p.size(), std::move(arcs)};
}

/// Directed trees, one per isomorphism class; a directed tree is its own
/// Hasse diagram, so these correspond to the tree posets.
inline std::vector<Digraph> gen_directed_trees(int n) {
  std::vector<Digraph> out;
  for (const LabeledPoset& p : gen_tree_posets(n)) out.push_back(poset_to_digraph(p));
  return out;
}

enum class Family {
  FreeTree,
  TreePoset,
  RootedTreePoset,
  LabeledTreePoset,
  LabeledRootedTreePoset,
  FairTree,
  DirectedTree,
};

inline const std::vector<std::pair<Family, std::string>>& family_names() {
  static const std::vector<std::pair<Family, std::string>> names{
      {Family::FreeTree, "free_tree"},
      {Family::TreePoset, "tree_poset"},
      {Family::RootedTreePoset, "rooted_tree_poset"},
      {Family::LabeledTreePoset, "labeled_tree_poset"},
      {Family::LabeledRootedTreePoset, "labeled_rooted_tree_poset"},
      {Family::FairTree, "fair_tree"},
      {Family::DirectedTree, "directed_tree"},
  };
  return names;
}

inline std::string family_name(Family f) {
  for (const auto& [k, v] : family_names())
    if (k == f) return v;
  return "?";
}

inline Family parse_family(const std::string& s) {
  for (const auto& [k, v] : family_names())
    if (v == s) return k;
  throw std::invalid_argument("unknown family '" + s + "'");
}

struct FamilySpec {
  Family family = Family::TreePoset;
  int n = 1;

  std::string to_string() const { return family_name(family) + ":" + std::to_string(n); }
  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// Free trees come out as digraphs with edges pointing away from vertex 0;
/// only the undirected shape is meaningful.
using FamilyMember = std::variant<LabeledPoset, Digraph>;

inline std::vector<FamilyMember> generate(const FamilySpec& spec) {
  std::vector<FamilyMember> out;
  auto take = [&](std::vector<LabeledPoset> v) {
    for (auto& p : v) out.emplace_back(std::move(p));
  };
  switch (spec.family) {
    case Family::FreeTree:
      for (const FreeTree& t : gen_free_trees(spec.n)) {
        std::vector<std::pair<int, int>> arcs = t.edges;
        out.emplace_back(Digraph(t.n, std::move(arcs)));
      }
      break;
    case Family::TreePoset: take(gen_tree_posets(spec.n)); break;
    case Family::RootedTreePoset: take(gen_rooted_tree_posets(spec.n)); break;
    case Family::LabeledTreePoset: take(gen_labeled_variants(gen_tree_posets(spec.n), LabelPolicy::AllAssignments)); break;
    case Family::LabeledRootedTreePoset:
      take(gen_labeled_variants(gen_rooted_tree_posets(spec.n), LabelPolicy::AllAssignments));
      break;
    case Family::FairTree: take(gen_labeled_variants(gen_rooted_tree_posets(spec.n), LabelPolicy::Fair)); break;
    case Family::DirectedTree:
      for (Digraph& g : gen_directed_trees(spec.n)) out.emplace_back(std::move(g));
      break;
  }
  return out;
}

/// Half-open index range [begin, end); end is clamped to the family size.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = static_cast<std::size_t>(-1);
};

/// Parses "a..b" (half-open).
inline IndexRange parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("range must look like a..b");
  IndexRange r;
  try {
    r.begin = std::stoull(s.substr(0, dots));
    r.end = std::stoull(s.substr(dots + 2));
  } catch (const std::exception&) {
    throw std::invalid_argument("range must look like a..b");
  }
  if (r.end < r.begin) throw std::invalid_argument("range end before start");
  return r;
}

template <class T>
std::vector<T> slice(std::vector<T> all, IndexRange r) {
  std::size_t b = std::min(r.begin, all.size());
  std::size_t e = std::min(r.end, all.size());
  return {std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(b)),
          std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(e))};
}

}  // namespace qsymtree
