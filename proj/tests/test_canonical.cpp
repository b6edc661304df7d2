#include <gtest/gtest.h>

#include <numeric>

#include "figures.hpp"
#include "qsymtree/canonical.hpp"
#include "support.hpp"

using namespace qsymtree;

namespace {

LabeledPoset permuted(const LabeledPoset& p, const std::vector<int>& perm) {
  std::vector<Cover> cs;
  for (const Cover& c : p.covers()) cs.push_back({perm[c.lower], perm[c.upper], c.strictness});
  return {p.size(), std::move(cs)};
}

std::vector<int> random_perm(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), support::rng());
  return perm;
}

Digraph permuted(const Digraph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> arcs;
  for (auto [u, v] : g.arcs()) arcs.push_back({perm[u], perm[v]});
  return {g.size(), std::move(arcs)};
}

Digraph random_digraph(int n, double density) {
  std::bernoulli_distribution arc(density);
  std::vector<std::pair<int, int>> arcs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && arc(support::rng())) arcs.push_back({u, v});
  return {n, std::move(arcs)};
}

}  // namespace

TEST(Canonical, Examples) {
  LabeledPoset a = parse_poset_literal("3; 1<2; 2<3");
  LabeledPoset b = parse_poset_literal("3; 3<1; 2<3");
  EXPECT_EQ(canonical_key(a), canonical_key(b));
  EXPECT_TRUE(isomorphic(a, b));
  EXPECT_NE(canonical_key(fig::mixed_vee()), canonical_key(fig::mixed_wedge()));
  EXPECT_EQ(enumerator_f(fig::mixed_vee()), enumerator_f(fig::mixed_wedge()));
  EXPECT_NE(canonical_key(fig::equal_kp_7_left()), canonical_key(fig::equal_kp_7_right()));
  EXPECT_FALSE(isomorphic(fig::equal_kp_7_left(), fig::equal_kp_7_right()));
  EXPECT_EQ(canonical_key(antichain(0)).bytes, "E");
  EXPECT_EQ(canonical_key(chain(2, Strictness::Weak)).bytes[0], 'T');
  EXPECT_EQ(canonical_key(antichain(2)).bytes[0], 'F');
  EXPECT_EQ(canonical_key(fig::labeled_bowtie()).bytes[0], 'G');
  // Strictness is part of the key.
  EXPECT_NE(canonical_key(chain(2, Strictness::Weak)), canonical_key(chain(2, Strictness::Strict)));
}

TEST(Canonical, GuardOnGeneralPosets) {
  // Two disjoint bowties plus a chain: not a forest, 12 elements.
  LabeledPoset p = disjoint_union(disjoint_union(fig::strict_bowtie(), fig::strict_bowtie()), chain(4, Strictness::Weak));
  EXPECT_THROW(canonical_key(p), GuardError);
  // Forests have no guard.
  EXPECT_NO_THROW(canonical_key(chain(40, Strictness::Weak)));
}

TEST(Canonical, DigraphKeys) {
  EXPECT_EQ(digraph_key(fig::path3()), digraph_key(parse_digraph_literal("3; 2->1; 3->1")));
  EXPECT_NE(digraph_key(fig::path3()), digraph_key(parse_digraph_literal("3; 1->2; 2->3")));
  EXPECT_FALSE(isomorphic(fig::two_cycle_pair_left(), fig::two_cycle_pair_right()));
  EXPECT_FALSE(isomorphic(reverse(fig::two_cycle_pair_left()), fig::two_cycle_pair_right()));
  EXPECT_TRUE(isomorphic(reverse(fig::reversal_pair_left()), fig::reversal_pair_right()));
  EXPECT_EQ(digraph_key(reverse(fig::reversal_pair_left())), digraph_key(fig::reversal_pair_right()));
}

// --- properties ------------------------------------------------------------

TEST(CanonicalProperty, TreeKeysMatchIsomorphism) {
  for (int n = 1; n <= 8; ++n) {
    auto posets = gen_tree_posets(n);
    std::vector<CanonicalKey> keys;
    for (const auto& p : posets) keys.push_back(canonical_key(p));
    for (std::size_t i = 0; i < posets.size(); ++i) {
      for (std::size_t j = i + 1; j < posets.size(); ++j) {
        ASSERT_NE(keys[i], keys[j]);
        ASSERT_FALSE(isomorphic(posets[i], posets[j])) << to_text(posets[i]) << to_text(posets[j]);
      }
      LabeledPoset q = permuted(posets[i], random_perm(n));
      ASSERT_EQ(canonical_key(q), keys[i]);
      ASSERT_TRUE(isomorphic(q, posets[i]));
    }
  }
}

TEST(CanonicalProperty, LabeledTreeKeysMatchIsomorphism) {
  for (int n = 1; n <= 6; ++n) {
    auto posets = gen_labeled_variants(gen_tree_posets(n), LabelPolicy::AllAssignments);
    for (std::size_t i = 0; i < posets.size(); ++i) {
      for (std::size_t j = i + 1; j < posets.size(); ++j) ASSERT_FALSE(isomorphic(posets[i], posets[j]));
      LabeledPoset q = permuted(posets[i], random_perm(n));
      ASSERT_EQ(canonical_key(q), canonical_key(posets[i]));
    }
  }
}

TEST(CanonicalProperty, GeneralPosets) {
  for (int i = 0; i < 400; ++i) {
    int n = support::uniform(1, 7);
    LabeledPoset p = support::random_poset(n, false, 0.4);
    LabeledPoset q = support::uniform(0, 1) ? permuted(p, random_perm(n)) : support::random_poset(n, false, 0.4);
    ASSERT_EQ(canonical_key(p) == canonical_key(q), isomorphic(p, q)) << to_text(p) << to_text(q);
    ASSERT_EQ(canonical_key(permuted(p, random_perm(n))), canonical_key(p));
  }
  // Larger twin-heavy posets stay fast and consistent.
  for (int i = 0; i < 40; ++i) {
    LabeledPoset p = support::random_poset(11, false, 0.25);
    ASSERT_EQ(canonical_key(permuted(p, random_perm(11))), canonical_key(p)) << to_text(p);
  }
}

TEST(CanonicalProperty, DigraphKeys) {
  for (int i = 0; i < 400; ++i) {
    int n = support::uniform(1, 6);
    Digraph g = random_digraph(n, 0.3);
    Digraph h = support::uniform(0, 1) ? permuted(g, random_perm(n)) : random_digraph(n, 0.3);
    ASSERT_EQ(digraph_key(g) == digraph_key(h), isomorphic(g, h)) << to_text(g) << to_text(h);
  }
  for (int n = 1; n <= 7; ++n)
    for (const auto& t : gen_directed_trees(n)) ASSERT_EQ(digraph_key(permuted(t, random_perm(n))), digraph_key(t));
}
