#pragma once

// Random instances and brute-force oracles shared by the unit tests.

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "qsymtree/enumerate.hpp"
#include "qsymtree/poset.hpp"
#include "qsymtree/qsym.hpp"

namespace support {

using namespace qsymtree;

/// QSYM_TEST_SEED overrides the fixed default.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("QSYM_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611;
}

inline std::mt19937_64& rng() {
  thread_local std::mt19937_64 gen(seed());
  return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Composition random_composition(int n) {
  if (n == 0) return {};
  std::uint64_t mask = std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << (n - 1)) - 1)(rng());
  return Composition::from_descent_mask(mask, n);
}

/// A few terms of weights in [lo, hi] with small nonzero coefficients.
inline QSymExpr random_expr(Basis b, int lo, int hi, int max_terms = 4) {
  QSymExpr f(b);
  while (f.is_zero()) {
    int terms = uniform(1, max_terms);
    for (int i = 0; i < terms; ++i) {
      int c = uniform(-3, 3);
      f.add_term(random_composition(uniform(lo, hi)), c == 0 ? 1 : c);
    }
  }
  return f;
}

/// Random poset from a random DAG on n elements, with random strictness;
/// retried until the assignment is realizable when `realizable` is set.
inline LabeledPoset random_poset(int n, bool realizable = true, double density = 0.35) {
  std::bernoulli_distribution arc(density), strict(0.5);
  while (true) {
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (arc(rng())) arcs.push_back({u, v});
    LabeledPoset shape = dag_to_poset(Digraph(n, arcs));
    std::vector<Cover> cs = shape.covers();
    for (auto& c : cs) c.strictness = strict(rng()) ? Strictness::Strict : Strictness::Weak;
    LabeledPoset p(n, std::move(cs));
    if (!realizable || is_realizable(p)) return p;
  }
}

inline LabeledPoset random_tree_poset(int n) {
  auto all = gen_labeled_variants(gen_tree_posets(n), LabelPolicy::AllAssignments);
  return all[static_cast<std::size_t>(uniform(0, static_cast<int>(all.size()) - 1))];
}

/// All labeled posets on n elements up to isomorphism is too costly; this
/// lists every DAG on n vertices (edges only forward in 0..n-1) reduced to a
/// poset, with every strictness assignment, without deduplication.
template <class F>
void for_each_labeled_poset(int n, F&& f) {
  const int pairs = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) slots.push_back({u, v});
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs); ++m) {
    std::vector<std::pair<int, int>> arcs;
    for (int e = 0; e < pairs; ++e)
      if ((m >> e) & 1U) arcs.push_back(slots[e]);
    Digraph g(n, arcs);
    LabeledPoset shape = dag_to_poset(g);
    // Only take transitively reduced arc sets so each order appears once.
    if (shape.covers().size() != arcs.size()) continue;
    const std::size_t c = shape.covers().size();
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << c); ++s) {
      std::vector<Cover> cs = shape.covers();
      for (std::size_t i = 0; i < c; ++i) cs[i].strictness = ((s >> i) & 1U) ? Strictness::Strict : Strictness::Weak;
      f(LabeledPoset(n, std::move(cs)));
    }
  }
}

/// Brute-force count of proper colourings with colours 1..k, graded by t^asc
/// and aggregated into M-basis terms by the ordered set of used colours.
inline TQSymPoly truncated_xgt_oracle(const Digraph& g, int k) {
  const int n = g.size();
  TQSymPoly out;
  std::vector<int> col(n, 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      int asc = 0;
      for (auto [a, b] : g.arcs()) {
        if (col[a] == col[b]) return;
        if (col[a] < col[b]) ++asc;
      }
      // Monomial x^col lies in M_alpha with alpha the nonzero multiplicities.
      std::vector<int> mult(k, 0);
      for (int c : col) ++mult[c];
      std::vector<int> parts;
      for (int m : mult)
        if (m) parts.push_back(m);
      // Count only the monomial whose used colours are 0..l-1; each such
      // monomial appears exactly once per M_alpha term.
      int used = static_cast<int>(parts.size());
      for (int c = 0; c < used; ++c)
        if (!mult[c]) return;
      out.add(asc, QSymExpr::basis_element(Basis::M, Composition(parts)));
      return;
    }
    for (int c = 0; c < k; ++c) {
      col[v] = c;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace support
