#pragma once

// Isomorphism classes of labeled posets (strictness-aware).

#include <algorithm>
#include <array>
#include <numeric>
#include <functional>
#include <string>
#include <vector>

#include "digraph.hpp"
#include "invariants.hpp"
#include "poset.hpp"

namespace qsymtree {

/// Byte string naming an isomorphism class; equal keys iff isomorphic.
struct CanonicalKey {
  std::string bytes;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept { return std::hash<std::string>{}(k.bytes); }
};

namespace detail {

/// Undirected tree with a one-byte annotation per directed half-edge.
struct AnnotatedTree {
  std::vector<std::vector<std::pair<int, char>>> adj;  // (neighbor, label seen going there)

  int size() const { return static_cast<int>(adj.size()); }
};

inline std::vector<int> tree_centroids(const AnnotatedTree& t) {
  const int n = t.size();
  if (n <= 2) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  std::vector<int> parent(n, -1), order, sub(n, 1);
  order.reserve(n);
  std::vector<int> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto [w, lab] : t.adj[v]) {
      if (parent[w] == -1) {
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != 0) sub[parent[*it]] += sub[*it];
  }
  std::vector<int> out;
  int best = n;
  for (int v = 0; v < n; ++v) {
    int worst = n - sub[v];
    for (auto [w, lab] : t.adj[v])
      if (w != parent[v] || v == 0) {
        if (parent[w] == v) worst = std::max(worst, sub[w]);
      }
    if (worst < best) {
      best = worst;
      out = {v};
    } else if (worst == best) {
      out.push_back(v);
    }
  }
  return out;
}

/// AHU encoding rooted at v, children sorted by (edge label + encoding).
inline std::string rooted_code(const AnnotatedTree& t, int v, int parent) {
  std::vector<std::string> kids;
  for (auto [w, lab] : t.adj[v]) {
    if (w == parent) continue;
    kids.push_back(lab + rooted_code(t, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

/// Smallest rooted encoding over the centroids.
inline std::string free_tree_code(const AnnotatedTree& t) {
  std::string best;
  bool first = true;
  for (int c : tree_centroids(t)) {
    std::string code = rooted_code(t, c, -1);
    if (first || code < best) best = std::move(code);
    first = false;
  }
  return best;
}

/// Half-edge labels: 'u'/'d' for going up/down, upper case when strict.
inline AnnotatedTree annotate(const LabeledPoset& p, Mask comp, std::vector<int>& index) {
  AnnotatedTree t;
  index.assign(p.size(), -1);
  int m = 0;
  for (int v = 0; v < p.size(); ++v)
    if (comp & bit(v)) index[v] = m++;
  t.adj.assign(m, {});
  for (const Cover& c : p.covers()) {
    if (!(comp & bit(c.lower))) continue;
    bool strict = c.strictness == Strictness::Strict;
    t.adj[index[c.lower]].push_back({index[c.upper], strict ? 'U' : 'u'});
    t.adj[index[c.upper]].push_back({index[c.lower], strict ? 'D' : 'd'});
  }
  return t;
}

inline constexpr int kGeneralCanonGuardN = 11;

/// Relation code of the pair (earlier position j, later position i).
inline char pair_code(const LabeledPoset& p, int a_earlier, int b_later) {
  if (auto s = p.cover_type(a_earlier, b_later)) return *s == Strictness::Weak ? '1' : '2';
  if (auto s = p.cover_type(b_later, a_earlier)) return *s == Strictness::Weak ? '3' : '4';
  return '0';
}

/// Colour refinement over covers; returns iso-invariant ranks.
inline std::vector<int> refined_colors(const LabeledPoset& p) {
  const int n = p.size();
  auto up = element_up_jumps(p);
  auto down = element_jumps(p);
  std::vector<std::vector<int>> sig(n);
  for (int v = 0; v < n; ++v) sig[v] = {down[v], up[v]};
  std::vector<int> color(n, 0);
  int classes = -1;
  while (true) {
    std::vector<std::vector<int>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < n; ++v) {
      color[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    }
    if (static_cast<int>(sorted.size()) == classes) break;
    classes = static_cast<int>(sorted.size());
    for (int v = 0; v < n; ++v) {
      std::vector<int> nb;
      for (int w : p.upper_covers(v)) nb.push_back(4 * color[w] + (p.cover_type(v, w) == Strictness::Weak ? 0 : 1));
      for (int w : p.lower_covers(v)) nb.push_back(4 * color[w] + (p.cover_type(w, v) == Strictness::Weak ? 2 : 3));
      std::sort(nb.begin(), nb.end());
      sig[v] = {color[v], -1};
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
  }
  return color;
}

/// Minimal relation-code string over orderings that list colour classes in
/// rank order. Twins (same covers, same marks) are interchangeable, so only
/// one of them is tried per position.
inline std::string general_code(const LabeledPoset& p) {
  const int n = p.size();
  std::vector<int> color = refined_colors(p);
  std::vector<int> slot_color;  // colour required at each position
  for (int c = 0; static_cast<int>(slot_color.size()) < n; ++c) {
    for (int v = 0; v < n; ++v)
      if (color[v] == c) slot_color.push_back(c);
  }
  auto twins = [&](int a, int b) {
    auto sig = [&](int v) {
      std::vector<std::pair<int, int>> s;
      for (int w : p.upper_covers(v)) s.push_back({w, static_cast<int>(*p.cover_type(v, w))});
      for (int w : p.lower_covers(v)) s.push_back({w + n, static_cast<int>(*p.cover_type(w, v))});
      std::sort(s.begin(), s.end());
      return s;
    };
    return sig(a) == sig(b);
  };

  std::string best, cur;
  bool have_best = false;
  std::vector<int> order;
  Mask used = 0;
  auto rec = [&](auto&& self, int pos, bool below_best) -> void {
    if (pos == n) {
      if (!have_best || cur < best) {
        best = cur;
        have_best = true;
      }
      return;
    }
    std::vector<int> tried;
    for (int v = 0; v < n; ++v) {
      if ((used & bit(v)) || color[v] != slot_color[pos]) continue;
      if (std::any_of(tried.begin(), tried.end(), [&](int t) { return twins(t, v); })) continue;
      tried.push_back(v);
      std::size_t mark = cur.size();
      for (int j = 0; j < pos; ++j) cur += pair_code(p, order[j], v);
      bool smaller = below_best;
      bool prune = false;
      if (have_best && !below_best) {
        int c = cur.compare(0, cur.size(), best, 0, cur.size());
        if (c > 0) prune = true;
        if (c < 0) smaller = true;
      }
      if (!prune) {
        order.push_back(v);
        used |= bit(v);
        self(self, pos + 1, smaller);
        used &= ~bit(v);
        order.pop_back();
      }
      cur.resize(mark);
    }
  };
  rec(rec, 0, false);
  std::string head;
  for (int c : slot_color) head += std::to_string(c) + ",";
  return head + ":" + best;
}

}  // namespace detail

/// Trees and forests use centroid-rooted encodings with (direction,
/// strictness) edge labels; other posets use a bounded canonical search.
inline CanonicalKey canonical_key(const LabeledPoset& p) {
  if (p.size() == 0) return {"E"};
  if (is_forest(p)) {
    std::vector<std::string> parts;
    std::vector<int> index;
    for (Mask comp : components(p)) parts.push_back(detail::free_tree_code(detail::annotate(p, comp, index)));
    std::sort(parts.begin(), parts.end());
    if (parts.size() == 1) return {"T" + parts[0]};
    std::string s = "F";
    for (const auto& part : parts) s += part + "|";
    return {s};
  }
  guard::check(p.size(), guard::max_n(detail::kGeneralCanonGuardN), "canonical_key (non-forest)");
  return {"G" + std::to_string(p.size()) + ";" + detail::general_code(p)};
}

/// Backtracking search for a strictness-preserving isomorphism.
inline bool isomorphic(const LabeledPoset& p, const LabeledPoset& q) {
  const int n = p.size();
  if (n != q.size() || p.covers().size() != q.covers().size()) return false;
  auto profile = [](const LabeledPoset& x, int v) {
    std::array<int, 4> a{0, 0, 0, 0};
    for (int w : x.upper_covers(v)) ++a[*x.cover_type(v, w) == Strictness::Weak ? 0 : 1];
    for (int w : x.lower_covers(v)) ++a[*x.cover_type(w, v) == Strictness::Weak ? 2 : 3];
    return a;
  };
  std::vector<int> map(n, -1);
  Mask used = 0;
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if ((used & bit(w)) || profile(p, v) != profile(q, w)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        ok = p.cover_type(u, v) == q.cover_type(map[u], w) && p.cover_type(v, u) == q.cover_type(w, map[u]);
      }
      if (!ok) continue;
      map[v] = w;
      used |= bit(w);
      if (self(self, v + 1)) return true;
      used &= ~bit(w);
      map[v] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

inline constexpr int kDigraphCanonGuardN = 8;

/// Directed trees reuse the tree-poset key (a directed tree is its own Hasse
/// diagram); other digraphs take the smallest adjacency string over all
/// vertex orders.
inline CanonicalKey digraph_key(const Digraph& g) {
  if (is_directed_tree(g)) return {"D" + canonical_key(dag_to_poset(g)).bytes};
  const int n = g.size();
  guard::check(n, guard::max_n(kDigraphCanonGuardN), "digraph_key (non-tree)");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string code(static_cast<std::size_t>(n) * n, '0');
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (g.has_arc(perm[i], perm[j])) code[static_cast<std::size_t>(i) * n + j] = '1';
    if (best.empty() || code < best) best = std::move(code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {"G" + std::to_string(n) + ";" + best};
}

/// Backtracking search for an arc-preserving bijection.
inline bool isomorphic(const Digraph& g, const Digraph& h) {
  const int n = g.size();
  if (n != h.size() || g.arcs().size() != h.arcs().size()) return false;
  std::vector<int> map(n, -1);
  Mask used = 0;
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if ((used & bit(w)) || std::popcount(g.out(v)) != std::popcount(h.out(w)) ||
          std::popcount(g.in(v)) != std::popcount(h.in(w))) {
        continue;
      }
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        ok = g.has_arc(u, v) == h.has_arc(map[u], w) && g.has_arc(v, u) == h.has_arc(w, map[u]);
      }
      if (!ok) continue;
      map[v] = w;
      used |= bit(w);
      if (self(self, v + 1)) return true;
      used &= ~bit(w);
      map[v] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace qsymtree
