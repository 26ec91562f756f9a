#include <gtest/gtest.h>

#include <random>

#include "finv/error.hpp"
#include "finv/random.hpp"
#include "finv/subgroup.hpp"
#include "support.hpp"

using namespace finv;
using finv::testing::S;
using finv::testing::W;
using finv::testing::kind_of;

namespace {

CosetAction swap_action() { return CosetAction(2, {{1, 0}, {1, 0}}); }
CosetAction cyclic3() { return CosetAction(2, {parse_cycles("(0 1 2)", 3), identity_permutation(3)}); }
CosetAction non_normal3() { return CosetAction(2, {parse_cycles("(0 1)", 3), parse_cycles("(1 2)", 3)}); }

}  // namespace

TEST(Permutation, CycleNotation) {
  EXPECT_EQ(parse_cycles("(0 1 2)(3 4)", 5), (Permutation{1, 2, 0, 4, 3}));
  EXPECT_EQ(parse_cycles("(01)", 3), (Permutation{1, 0, 2}));
  EXPECT_EQ(parse_cycles("()", 2), identity_permutation(2));
  EXPECT_EQ(format_cycles(Permutation{1, 2, 0, 4, 3}), "(0 1 2)(3 4)");
  EXPECT_EQ(kind_of([] { parse_cycles("(0 0)", 2); }), ErrorKind::NonBijective);
  EXPECT_EQ(kind_of([] { parse_cycles("(0 5)", 2); }), ErrorKind::NonBijective);
}

TEST(CosetAction, Validation) {
  EXPECT_EQ(CosetAction(2, {{0}, {0}}).index(), 1);
  EXPECT_EQ(swap_action().index(), 2);
  EXPECT_EQ(kind_of([] { CosetAction(2, {{0, 1}, {0, 1}}); }), ErrorKind::NotTransitive);
  EXPECT_EQ(kind_of([] { CosetAction(2, {{0, 0}, {1, 0}}); }), ErrorKind::NonBijective);
}

TEST(CosetAction, CosetOf) {
  const CosetAction act = swap_action();
  EXPECT_EQ(act.coset_of(W(2, "a")), 1);
  EXPECT_EQ(act.coset_of(W(2, "ab")), 0);
  EXPECT_EQ(act.coset_of(W(2, "e")), 0);
}

TEST(Transversal, SwapAction) {
  const TransversalData td = schreier_transversal(swap_action());
  EXPECT_EQ(td.delta_set(), S(2, {"e", "a"}));
  EXPECT_EQ(td.gens, (std::vector<Word>{W(2, "bA"), W(2, "aa"), W(2, "ab")}));
  EXPECT_EQ(td.gens.size(), 3u);
}

TEST(Transversal, IndexOneAndCyclic) {
  const TransversalData one = schreier_transversal(CosetAction(2, {{0}, {0}}));
  EXPECT_EQ(one.delta_set(), S(2, {"e"}));
  EXPECT_EQ(one.gens, (std::vector<Word>{W(2, "a"), W(2, "b")}));
  const TransversalData three = schreier_transversal(cyclic3());
  EXPECT_EQ(three.delta_set(), S(2, {"e", "a", "A"}));
  EXPECT_EQ(three.gens.size(), 4u);
}

TEST(Transversal, BiConnectedOnlyForNormal) {
  const TransversalData td = bi_transversal(swap_action());
  EXPECT_EQ(td.delta_set(), S(2, {"e", "a"}));
  EXPECT_TRUE(is_bi_connected(td.delta_set()));
  EXPECT_EQ(bi_transversal(CosetAction(2, {{0}, {0}})).delta_set(), S(2, {"e"}));
  EXPECT_EQ(kind_of([] { bi_transversal(non_normal3()); }), ErrorKind::NotNormal);
}

TEST(Normality, Examples) {
  EXPECT_TRUE(is_normal(swap_action()));
  EXPECT_FALSE(is_normal(non_normal3()));
  EXPECT_TRUE(is_normal(CosetAction(2, {{0}, {0}})));
}

TEST(NormalCore, Examples) {
  EXPECT_EQ(normal_core(swap_action()).index(), 2);
  EXPECT_EQ(normal_core(non_normal3()).index(), 6);
  EXPECT_EQ(normal_core(CosetAction(2, {{0}, {0}})).index(), 1);
  EXPECT_EQ(kind_of([] { normal_core(non_normal3(), 4); }), ErrorKind::ImageTooLarge);
}

TEST(NormalCore, IsNormalAndInsideH) {
  Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    const CosetAction act = random_coset_action(rng, 2, 1 + i % 5);
    const CosetAction core = normal_core(act);
    EXPECT_TRUE(is_normal(core));
    for (const auto& t : schreier_transversal(core).gens) EXPECT_TRUE(act.contains(t)) << t.str();
  }
}

TEST(Rewrite, Examples) {
  const CosetAction act = swap_action();
  const TransversalData td = schreier_transversal(act);
  EXPECT_EQ(rewrite_in_T(td, act, W(2, "aa")), (TWord{2}));
  EXPECT_TRUE(rewrite_in_T(td, act, W(2, "e")).empty());
  EXPECT_EQ(rewrite_in_T(td, act, W(2, "abaa")), (TWord{3, 2}));
  EXPECT_EQ(kind_of([&] { rewrite_in_T(td, act, W(2, "a")); }), ErrorKind::NotInSubgroup);
}

TEST(Transversal, StructuralInvariantsOnRandomActions) {
  Rng rng(4);
  std::uniform_int_distribution<int> len(0, 8);
  for (int i = 0; i < 120; ++i) {
    const int r = 2 + i % 2;
    const int n = 1 + i % 8;
    const CosetAction act = random_coset_action(rng, r, n);
    const TransversalData td = schreier_transversal(act);
    EXPECT_EQ(static_cast<int>(td.gens.size()), subgroup_rank(n, r));
    EXPECT_EQ(static_cast<int>(td.gens.size()), n * (r - 1) + 1);
    EXPECT_TRUE(td.delta_set().contains(Word::identity(r)));
    EXPECT_TRUE(is_connected(td.delta_set(), Side::Right));
    for (int c = 0; c < n; ++c) EXPECT_EQ(act.coset_of(td.delta[static_cast<std::size_t>(c)]), c);
    for (const auto& t : td.gens) {
      EXPECT_FALSE(t.is_identity());
      EXPECT_EQ(act.coset_of(t), 0);
    }
    // Random T-words survive a round trip through G.
    std::uniform_int_distribution<int> gen(1, static_cast<int>(td.gens.size()));
    for (int k = 0; k < 5; ++k) {
      TWord tw;
      for (int j = len(rng); j > 0; --j) {
        int x = gen(rng) * (rng() % 2 ? 1 : -1);
        if (!tw.empty() && tw.back() == -x) continue;
        tw.push_back(x);
      }
      EXPECT_EQ(rewrite_in_T(td, act, evaluate_T(td, tw)), tw);
    }
  }
}

TEST(Transversal, TranslatesMeetExactlyAlongTEdges) {
  // For distinct h, k in H, h Delta u k Delta is right connected iff h^-1 k is in T or T^-1.
  Rng rng(9);
  for (int i = 0; i < 12; ++i) {
    const CosetAction act = random_coset_action(rng, 2, 1 + i % 4);
    const TransversalData td = schreier_transversal(act);
    const WordSet D = td.delta_set();
    WordSet gens_pm;
    for (const auto& t : td.gens) {
      gens_pm.insert(t);
      gens_pm.insert(t.inverse());
    }
    std::vector<Word> elems;
    for (const auto& tw : ball_words(static_cast<int>(td.gens.size()), 2)) elems.push_back(substitute(tw, td.gens));
    for (std::size_t x = 0; x < elems.size(); ++x) {
      for (std::size_t y = x + 1; y < elems.size(); ++y) {
        const bool joined = is_connected(set_union(left_translate(elems[x], D), left_translate(elems[y], D)), Side::Right);
        EXPECT_EQ(joined, gens_pm.contains(elems[x].inverse() * elems[y]));
      }
    }
  }
}

TEST(SubgroupEdges, Examples) {
  const CosetAction sw = swap_action();
  const IdentityCheck c = check_subedge_identity(schreier_transversal(sw), sw);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.lhs.str(), "4a + 2b");
  EXPECT_EQ(c.rhs.str(), "4a + 2b");

  const CosetAction one(2, {{0}, {0}});
  const IdentityCheck d = check_subedge_identity(schreier_transversal(one), one);
  EXPECT_TRUE(d.holds);
  EXPECT_EQ(d.lhs.str(), "1a + 1b");

  const CosetAction c3 = cyclic3();
  EXPECT_TRUE(check_subedge_identity(schreier_transversal(c3), c3).holds);
}

TEST(Comb, Examples) {
  const CombCheck one = check_comb_identity(S(2, {"e"}));
  EXPECT_TRUE(one.holds());
  EXPECT_EQ(one.left_growth_rule.lhs.str(), "1a + 1b");
  const CombCheck two = check_comb_identity(S(2, {"e", "a"}));
  EXPECT_TRUE(two.holds());
  EXPECT_EQ(two.main.lhs.str(), "4a + 2b");
  EXPECT_EQ(two.main.rhs.str(), "4a + 2b");
  EXPECT_TRUE(check_comb_identity(S(2, {"e", "a", "b"})).holds());
  EXPECT_EQ(kind_of([] { check_comb_identity(S(2, {"a"})); }), ErrorKind::MissingIdentity);
  EXPECT_EQ(kind_of([] { check_comb_identity(S(2, {"e", "a", "ab"})); }), ErrorKind::NotBiConnected);
}

TEST(Comb, HoldsOnRandomBiConnectedSets) {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const int r = 2 + i % 2;
    const WordSet D = random_bi_connected_set(rng, r, 1 + i % 12);
    ASSERT_TRUE(is_bi_connected(D));
    EXPECT_TRUE(check_comb_identity(D).holds()) << to_string(D);
  }
}

TEST(SubgroupEdges, HoldsOnRandomActions) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const int r = 2 + i % 2;
    const CosetAction act = random_coset_action(rng, r, 1 + i % 6);
    EXPECT_TRUE(check_subedge_identity(schreier_transversal(act), act).holds);
  }
}

TEST(Kps, Scaling) {
  EXPECT_EQ(kps_scaling({1, 1, 1}, {1}), Rational(2));
  EXPECT_EQ(kps_scaling({1}, {2, 3}), Rational(1, 6));
  EXPECT_EQ(kps_scaling({}, {5}), Rational(-1, 5));
  EXPECT_EQ(kind_of([] { kps_scaling({0}, {1}); }), ErrorKind::ConfigError);
}
