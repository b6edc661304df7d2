#pragma once

// Reference posets and digraphs with known invariant coincidences. Element
// numbers are 1-based as in the literal syntax.

#include "qsymtree/io.hpp"

namespace fig {

using qsymtree::Digraph;
using qsymtree::LabeledPoset;
using qsymtree::parse_digraph_literal;
using qsymtree::parse_poset_literal;

// v1 -> v2 <- v3
inline Digraph path3() { return parse_digraph_literal("3; 1->2; 3->2"); }

// Pairs of digraphs with equal X(x,t); in the first, one is the reversal of
// the other.
inline Digraph reversal_pair_left() { return parse_digraph_literal("4; 1->3; 3->2; 3->4; 4->2"); }
inline Digraph reversal_pair_right() { return parse_digraph_literal("4; 3->1; 2->3; 4->3; 2->4"); }
inline Digraph two_cycle_pair_left() { return parse_digraph_literal("4; 1->3; 3->4; 2->1; 4->1; 3->2; 4->2; 2->4"); }
inline Digraph two_cycle_pair_right() { return parse_digraph_literal("4; 1->3; 3->4; 1->2; 4->1; 2->3; 4->2; 2->4"); }
inline Digraph five_vertex_pair_left() { return parse_digraph_literal("5; 1->3; 1->2; 2->3; 2->4; 3->4; 4->5"); }
inline Digraph five_vertex_pair_right() { return parse_digraph_literal("5; 1->2; 1->3; 2->3; 3->4; 3->5; 4->5"); }

// Acyclic digraph with one redundant arc (5 -> 1).
inline Digraph redundant_arc_dag() { return parse_digraph_literal("5; 3->1; 2->1; 4->1; 5->4; 5->2; 5->1"); }
inline LabeledPoset redundant_arc_dag_poset() { return parse_poset_literal("5; 5<4 S; 4<1 S; 5<2 S; 2<1 S; 3<1 S"); }

// Bowtie labeled 1, 4 at the bottom and 2, 3 on top.
inline LabeledPoset labeled_bowtie() { return parse_poset_literal("4; 1<2 W; 1<3 W; 4<2 S; 4<3 S"); }
inline LabeledPoset strict_bowtie() { return parse_poset_literal("4; 1<3 S; 1<4 S; 2<3 S; 2<4 S"); }

// K = F_22 + F_31.
inline LabeledPoset worked_example() { return parse_poset_literal("4; 1<3 W; 3<4 W; 3<2 S"); }

// Non-isomorphic posets with equal K_P (all weak).
inline LabeledPoset equal_kp_7_left() { return parse_poset_literal("7; 1<5; 1<3; 5<7; 4<7; 2<4; 2<6; 3<6"); }
inline LabeledPoset equal_kp_7_right() { return parse_poset_literal("7; 1<5; 5<6; 3<6; 1<3; 1<7; 4<7; 2<4; 2<6"); }
inline LabeledPoset equal_kp_10_left() {
  return parse_poset_literal("10; 1<5; 5<10; 9<10; 8<9; 8<7; 4<7; 2<4; 2<6; 3<6; 1<3");
}
inline LabeledPoset equal_kp_10_right() {
  return parse_poset_literal("10; 1<4; 4<5; 2<5; 2<8; 8<10; 9<10; 9<7; 7<6; 1<6; 1<3; 3<5");
}

// All-strict trees with equal F-support but different Kbar; right = dual(left).
inline LabeledPoset same_support_left() { return parse_poset_literal("5; 2<4 S; 1<4 S; 1<3 S; 3<5 S"); }
inline LabeledPoset same_support_right() { return parse_poset_literal("5; 1<2 S; 2<4 S; 3<4 S; 3<5 S"); }

// Labeled trees with equal K_(P,omega).
inline LabeledPoset equal_k_6_top() { return parse_poset_literal("6; 1<3 W; 1<4 S; 2<4 W; 2<5 W; 4<6 W"); }
inline LabeledPoset equal_k_6_bottom() { return parse_poset_literal("6; 1<3 W; 1<2 W; 2<5 W; 1<4 S; 4<6 W"); }
inline LabeledPoset mixed_vee() { return parse_poset_literal("3; 1<3 W; 1<2 S"); }
inline LabeledPoset mixed_wedge() { return parse_poset_literal("3; 1<3 W; 2<3 S"); }

// Fair tree on 13 elements.
inline LabeledPoset fair_tree_13() {
  return parse_poset_literal(
      "13; 1<2 W; 1<3 W; 1<4 W; 2<5 W; 2<6 W; 10<12 W; 10<13 W;"
      " 6<11 S; 3<7 S; 3<8 S; 3<9 S; 4<10 S");
}

// Disconnected member of class C on 16 elements.
inline LabeledPoset class_c_16() {
  return parse_poset_literal(
      "16; 2<1 W; 3<1 W; 9<1 W; 10<1 W; 11<1 W; 7<3 W; 8<3 W; 12<4 W; 12<5 W;"
      " 4<2 S; 5<2 S; 6<2 S; 13<10 S; 13<11 S; 14<12 S; 14<6 S; 14<7 S; 14<8 S; 15<16 S");
}

// Rank-one trees (bottoms 1..4, tops 5..11) separated by pointed partitions.
inline LabeledPoset rank_one_left() {
  return parse_poset_literal("11; 1<5; 1<6; 1<7; 2<7; 3<7; 3<8; 4<8; 4<9; 4<10; 4<11");
}
inline LabeledPoset rank_one_right() {
  return parse_poset_literal("11; 1<5; 1<6; 1<7; 2<7; 2<8; 3<8; 4<8; 4<9; 4<10; 4<11");
}

// Chain labeled 1, 2, 6, 5, 3, 4 from the bottom: K = F_312.
inline LabeledPoset chain_312() { return parse_poset_literal("6; 1<2 W; 2<3 W; 3<4 S; 4<5 S; 5<6 W"); }

}  // namespace fig
