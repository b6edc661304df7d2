#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "figures.hpp"
#include "qsymtree/io.hpp"
#include "qsymtree/poset.hpp"
#include "support.hpp"

using namespace qsymtree;

namespace {

QSymExpr F(std::initializer_list<int> parts) { return QSymExpr::basis_element(Basis::F, Composition(parts)); }

std::vector<std::vector<int>> all_extensions(const LabeledPoset& p, const Labeling& omega) {
  LinearExtensionStream s(p, omega);
  std::vector<std::vector<int>> out;
  while (auto w = s.next()) out.push_back(*w);
  return out;
}

// Random topological order of the labeling constraints.
Labeling random_labeling(const LabeledPoset& p) {
  const int n = p.size();
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (const Cover& c : p.covers()) {
    bool weak = c.strictness == Strictness::Weak;
    succ[weak ? c.lower : c.upper].push_back(weak ? c.upper : c.lower);
    ++indeg[weak ? c.upper : c.lower];
  }
  std::vector<int> ready;
  for (int v = 0; v < n; ++v)
    if (!indeg[v]) ready.push_back(v);
  Labeling omega{std::vector<int>(n)};
  for (int next = 1; !ready.empty(); ++next) {
    std::size_t i = static_cast<std::size_t>(support::uniform(0, static_cast<int>(ready.size()) - 1));
    int v = ready[i];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(i));
    omega.labels[v] = next;
    for (int w : succ[v])
      if (!--indeg[w]) ready.push_back(w);
  }
  return omega;
}

}  // namespace

TEST(Poset, ConstructorRejectsBadCovers) {
  EXPECT_THROW(LabeledPoset(2, {{0, 1, Strictness::Weak}, {1, 0, Strictness::Weak}}), std::invalid_argument);
  EXPECT_THROW(LabeledPoset(3, {{0, 1, Strictness::Weak}, {1, 2, Strictness::Weak}, {0, 2, Strictness::Weak}}),
               std::invalid_argument);
  EXPECT_THROW(LabeledPoset(2, {{0, 0, Strictness::Weak}}), std::invalid_argument);
  EXPECT_THROW(LabeledPoset(2, {{0, 2, Strictness::Weak}}), std::invalid_argument);
  EXPECT_THROW(LabeledPoset(2, {{0, 1, Strictness::Weak}, {0, 1, Strictness::Strict}}), std::invalid_argument);
}

TEST(Poset, Order) {
  LabeledPoset p = fig::worked_example();
  EXPECT_TRUE(p.less(0, 3));
  EXPECT_TRUE(p.less(0, 1));
  EXPECT_FALSE(p.comparable(1, 3));
  EXPECT_EQ(p.minimal_elements(), bit(0));
  EXPECT_EQ(p.maximal_elements(), bit(1) | bit(3));
  EXPECT_EQ(p.cover_type(2, 1), Strictness::Strict);
  EXPECT_FALSE(p.cover_type(0, 1).has_value());
  EXPECT_TRUE(p.is_order_ideal(bit(0) | bit(2)));
  EXPECT_FALSE(p.is_order_ideal(bit(2)));
}

TEST(Poset, RealizeLabeling) {
  LabeledPoset weak = all_weak(fig::labeled_bowtie());
  Labeling w = realize_labeling(weak);
  EXPECT_TRUE(is_consistent(weak, w));
  for (int n = 1; n <= 5; ++n)
    for (const auto& p : gen_labeled_variants(gen_tree_posets(n), LabelPolicy::AllAssignments))
      ASSERT_TRUE(is_consistent(p, realize_labeling(p)));
  // Strictness around the diamond forces omega(1) < omega(2) < omega(4) < omega(3) < omega(1).
  LabeledPoset diamond = parse_poset_literal("4; 1<2 W; 2<4 W; 1<3 S; 3<4 S");
  EXPECT_FALSE(is_realizable(diamond));
  try {
    realize_labeling(diamond);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "unrealizable strictness assignment");
  }
  EXPECT_THROW(enumerator_f(diamond), DomainError);
}

TEST(Poset, LinearExtensions) {
  LabeledPoset p = fig::labeled_bowtie();
  auto words = all_extensions(p, Labeling{{1, 2, 3, 4}});
  std::sort(words.begin(), words.end());
  EXPECT_EQ(words, (std::vector<std::vector<int>>{{1, 4, 2, 3}, {1, 4, 3, 2}, {4, 1, 2, 3}, {4, 1, 3, 2}}));
  EXPECT_EQ(all_extensions(chain(5, Strictness::Weak), Labeling{{1, 2, 3, 4, 5}}).size(), 1u);
  EXPECT_EQ(all_extensions(antichain(3), Labeling{{1, 2, 3}}).size(), 6u);
  EXPECT_THROW(LinearExtensionStream(chain(2, Strictness::Strict), Labeling{{1, 2}}), std::invalid_argument);
}

TEST(Poset, EnumeratorExamples) {
  EXPECT_EQ(enumerator_f(fig::worked_example()), F({2, 2}) + F({3, 1}));
  EXPECT_EQ(enumerator_f(singleton()), F({1}));
  EXPECT_EQ(enumerator_f(chain(2, Strictness::Weak)), F({2}));
  EXPECT_EQ(enumerator_f(chain(2, Strictness::Strict)), F({1, 1}));
  EXPECT_EQ(enumerator_f(fig::chain_312()), F({3, 1, 2}));
  EXPECT_EQ(enumerator_f(antichain(0)), QSymExpr::one());
  EXPECT_EQ(enumerator_f(all_weak(antichain(3))), enumerator_f(all_strict(antichain(3))));
}

TEST(Poset, EnumeratorMatchesStream) {
  for (int i = 0; i < 60; ++i) {
    LabeledPoset p = support::random_poset(support::uniform(1, 7));
    Labeling omega = realize_labeling(p);
    QSymExpr k(Basis::F);
    for (const auto& w : all_extensions(p, omega)) k.add_term(descent_composition(w), 1);
    ASSERT_EQ(enumerator_f(p), k) << to_text(p);
  }
}

TEST(Poset, PartitionOracleExamples) {
  EXPECT_EQ(partition_count_oracle(fig::same_support_left(), 4).to_string(),
            "q^4 + 2q^5 + 4q^6 + 4q^7 + 5q^8 + 4q^9 + 2q^10 + q^11");
  EXPECT_EQ(partition_count_oracle(singleton(), 3).to_string(), "1 + q + q^2");
  EXPECT_EQ(partition_count_oracle(chain(2, Strictness::Strict), 2).to_string(), "q");
  // Unrealizable assignments still count per edge.
  EXPECT_FALSE(partition_count_oracle(parse_poset_literal("4; 1<2 W; 2<4 W; 1<3 S; 3<4 S"), 3).is_zero());
  EXPECT_THROW(partition_count_oracle(chain(30, Strictness::Weak), 5), GuardError);
  EXPECT_THROW(partition_count_oracle(singleton(), 0), std::invalid_argument);
}

TEST(Poset, Constructions) {
  EXPECT_EQ(enumerator_f(ordsum_weak(singleton(), singleton())), F({2}));
  EXPECT_EQ(enumerator_f(ordsum_strict(singleton(), singleton())), F({1, 1}));
  LabeledPoset c = chain(2, Strictness::Weak);
  EXPECT_EQ(dual(c).covers().front().lower, 1);
  EXPECT_TRUE(isomorphic(dual(c), c));
  EXPECT_TRUE(isomorphic(dual(fig::same_support_left()), fig::same_support_right()));
  EXPECT_EQ(disjoint_union(singleton(), singleton()), antichain(2));
  EXPECT_EQ(flip_strictness(chain(3, Strictness::Weak)), chain(3, Strictness::Strict));
  EXPECT_EQ(enumerator_f(chain_for(Composition{2, 1, 3})), F({2, 1, 3}));
}

TEST(Poset, Components) {
  LabeledPoset p = fig::class_c_16();
  EXPECT_FALSE(is_tree(p));
  EXPECT_FALSE(is_forest(p));
  EXPECT_EQ(components(p).size(), 2u);
  EXPECT_TRUE(is_tree(fig::fair_tree_13()));
  EXPECT_TRUE(is_forest(antichain(3)));
  EXPECT_FALSE(is_tree(antichain(0)));
  LabeledPoset sub = convex_subposet(fig::worked_example(), bit(0) | bit(2) | bit(3));
  EXPECT_EQ(sub, chain(3, Strictness::Weak));
}

// --- properties ------------------------------------------------------------

TEST(PosetProperty, OracleEquivalenceAllPosetsUpToSix) {
  for (int n = 1; n <= 6; ++n) {
    std::set<CanonicalKey> seen;
    support::for_each_labeled_poset(n, [&](const LabeledPoset& p) {
      if (!is_realizable(p) || !seen.insert(canonical_key(p)).second) return;
      QSymExpr k = enumerator_f(p);
      for (int q = 1; q <= 4; ++q) ASSERT_EQ(principal_specialization(k, q), partition_count_oracle(p, q)) << to_text(p);
    });
  }
}

TEST(PosetProperty, OracleEquivalenceLabeledTreesSix) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& p : gen_labeled_variants(gen_tree_posets(n), LabelPolicy::AllAssignments)) {
      QSymExpr k = enumerator_f(p);
      for (int q = 1; q <= 4; ++q) ASSERT_EQ(principal_specialization(k, q), partition_count_oracle(p, q)) << to_text(p);
    }
  }
}

TEST(PosetProperty, EnumeratorIndependentOfLabeling) {
  for (int i = 0; i < 80; ++i) {
    LabeledPoset p = support::random_poset(support::uniform(1, 7));
    QSymExpr k = enumerator_f(p);
    for (int r = 0; r < 5; ++r) {
      Labeling omega = random_labeling(p);
      ASSERT_TRUE(is_consistent(p, omega));
      ASSERT_EQ(enumerator_f(p, omega), k) << to_text(p);
    }
  }
}

TEST(PosetProperty, BarCompatibility) {
  for (int n = 1; n <= 7; ++n)
    for (const auto& p : gen_labeled_variants(gen_tree_posets(n), LabelPolicy::AllAssignments))
      ASSERT_EQ(bar(enumerator_f(p)), enumerator_f(flip_strictness(p))) << to_text(p);
  for (int i = 0; i < 200; ++i) {
    LabeledPoset p = support::random_poset(support::uniform(1, 6));
    ASSERT_EQ(bar(enumerator_f(p)), enumerator_f(flip_strictness(p))) << to_text(p);
  }
}

TEST(PosetProperty, ProductLaws) {
  for (int i = 0; i < 300; ++i) {
    LabeledPoset p = support::random_poset(support::uniform(1, 5));
    LabeledPoset q = support::random_poset(support::uniform(1, 5));
    QSymExpr kp = enumerator_f(p), kq = enumerator_f(q);
    ASSERT_EQ(enumerator_f(ordsum_weak(p, q)), uparrow_product(kp, kq));
    ASSERT_EQ(enumerator_f(ordsum_strict(p, q)), upuparrow_product(kp, kq));
    ASSERT_EQ(enumerator_f(disjoint_union(p, q)), multiply(kp, kq));
  }
}

TEST(PosetProperty, SpecializationDuality) {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& base : gen_tree_posets(n)) {
      QSymExpr kp = enumerator_f(all_strict(base)), kd = enumerator_f(all_strict(dual(base)));
      for (int k = 1; k <= 4; ++k) {
        QPolynomial a = principal_specialization(kp, k), b = principal_specialization(kd, k);
        for (const auto& [e, c] : a.coeffs()) ASSERT_EQ(b.coeff(n * (k - 1) - e), c);
        for (const auto& [e, c] : b.coeffs()) ASSERT_EQ(a.coeff(n * (k - 1) - e), c);
      }
    }
  }
}

TEST(PosetProperty, LinearExtensionCounts) {
  for (int i = 0; i < 200; ++i) {
    LabeledPoset p = support::random_poset(support::uniform(0, 8));
    Integer e = linear_extension_count(p);
    ASSERT_EQ(e, linear_extension_count(dual(p)));
    Integer total = 0;
    const QSymExpr k = enumerator_f(p);
    for (const auto& [a, c] : k.terms()) total += c;
    ASSERT_EQ(e, total);
    if (p.size() <= 6) {
      ASSERT_EQ(e, Integer(static_cast<unsigned long>(all_extensions(p, realize_labeling(p)).size())));
    }
  }
}
