#include <gtest/gtest.h>

#include <cmath>

#include "finv/entropy.hpp"
#include "finv/error.hpp"
#include "finv/random.hpp"
#include "finv/transforms.hpp"
#include "support.hpp"

using namespace finv;
using finv::testing::h2;
using finv::testing::kind_of;
using finv::testing::S;
using finv::testing::symmetric_chain;
using finv::testing::vec;
using finv::testing::W;

namespace {

const double kLn2 = std::log(2.0);

CosetAction swap_action() { return CosetAction(2, {{1, 0}, {1, 0}}); }

}  // namespace

TEST(RestrictMarkov, UniformBernoulliOnIndexTwo) {
  const TreeMarkovMeasure tm = bernoulli(vec({0.5, 0.5}), 2);
  const CosetAction act = swap_action();
  const PatternMeasure pm = restrict_markov(tm, act, schreier_transversal(act));
  EXPECT_EQ(pm.measure.alphabet_size(), 4);
  EXPECT_EQ(pm.measure.rank(), 3);
  EXPECT_EQ(pm.coords, (std::vector<Word>{W(2, "e"), W(2, "a")}));
  EXPECT_EQ(pm.legend.size(), 4u);
  EXPECT_NEAR(f_markov(pm.measure), 2 * kLn2, 1e-12);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(pm.measure.pi()(k), 0.25, 1e-15);
}

TEST(RestrictMarkov, SymmetricChainDoubles) {
  const double p = 0.2;
  const CosetAction act = swap_action();
  const PatternMeasure pm = restrict_markov(symmetric_chain(p), act, schreier_transversal(act));
  EXPECT_NEAR(f_markov(pm.measure), 2 * (2 * h2(p) - kLn2), 1e-12);
}

TEST(RestrictMarkov, IndexOneIsIdentity) {
  const TreeMarkovMeasure tm = symmetric_chain(0.35);
  const CosetAction act(2, {{0}, {0}});
  const PatternMeasure pm = restrict_markov(tm, act, schreier_transversal(act));
  EXPECT_EQ(pm.measure.alphabet_size(), 2);
  EXPECT_EQ(pm.legend, (std::vector<std::vector<int>>{{0}, {1}}));
  EXPECT_TRUE(pm.measure.pi().isApprox(tm.pi()));
  for (int s = 1; s <= 2; ++s) EXPECT_TRUE(pm.measure.forward(s).isApprox(tm.forward(s)));
}

TEST(RestrictMarkov, IndexScalingOnRandomInstances) {
  Rng rng(71);
  for (int i = 0; i < 24; ++i) {
    const TreeMarkovMeasure tm = random_markov(rng, 2, 2);
    const CosetAction act = random_coset_action(rng, 2, 1 + i % 3);
    const PatternMeasure pm = restrict_markov(tm, act, schreier_transversal(act));
    EXPECT_EQ(pm.measure.rank(), act.index() + 1);
    EXPECT_NEAR(f_markov(pm.measure), act.index() * f_markov(tm), kCrossTolerance * (1 + std::abs(f_markov(tm))));
  }
}

TEST(RecodeMarkov, PreservesF) {
  Rng rng(73);
  for (const WordSet& U : {S(2, {"e"}), S(2, {"e", "a"}), S(2, {"e", "b", "ab"})}) {
    const TreeMarkovMeasure tm = random_markov(rng, 2, 2);
    const PatternMeasure pm = recode_markov(tm, U);
    EXPECT_EQ(pm.coords, std::vector<Word>(U.begin(), U.end()));
    EXPECT_NEAR(f_markov(pm.measure), f_markov(tm), kCrossTolerance);
  }
}

TEST(RecodeMarkov, RejectsBadBlocks) {
  const TreeMarkovMeasure tm = symmetric_chain(0.1);
  EXPECT_EQ(kind_of([&] { recode_markov(tm, S(2, {"e", "aa"})); }), ErrorKind::NotLeftConnected);
  EXPECT_EQ(kind_of([&] { recode_markov(tm, S(2, {"a"})); }), ErrorKind::MissingIdentity);
  EXPECT_EQ(kind_of([&] { recode_markov(tm, WordSet{}); }), ErrorKind::MissingIdentity);
}

TEST(MarkovApprox, RecoversMarkovMeasure) {
  Rng rng(79);
  for (int i = 0; i < 10; ++i) {
    const TreeMarkovMeasure tm = random_markov(rng, 2 + i % 2, 2 + i % 3);
    const PairMarginals pm = empirical_pairs(Measure{tm});
    const TreeMarkovMeasure back = markov_approx(pm.pi, pm.joints);
    EXPECT_TRUE(back.pi().isApprox(tm.pi(), 1e-12));
    for (int s = 1; s <= tm.rank(); ++s) EXPECT_TRUE(back.forward(s).isApprox(tm.forward(s), 1e-12));
  }
}

TEST(MarkovApprox, RejectsInconsistentInput) {
  Eigen::MatrixXd J(2, 2);
  J << 0.4, 0.1, 0.1, 0.4;
  EXPECT_NO_THROW(markov_approx(vec({0.5, 0.5}), {J}));
  EXPECT_EQ(kind_of([&] { markov_approx(vec({0.6, 0.4}), {J}); }), ErrorKind::InconsistentMarginals);
  Eigen::MatrixXd skew(2, 2);
  skew << 0.5, 0.0, 0.2, 0.3;
  EXPECT_EQ(kind_of([&] { markov_approx(vec({0.5, 0.5}), {skew}); }), ErrorKind::InconsistentMarginals);
  Eigen::MatrixXd zero(2, 2);
  zero << 1.0, 0.0, 0.0, 0.0;
  EXPECT_EQ(kind_of([&] { markov_approx(vec({1.0, 0.0}), {zero}); }), ErrorKind::ZeroMass);
}

TEST(EmpiricalPairs, FiniteExamples) {
  const FiniteAction sw({{1, 0}, {1, 0}}, {0.5, 0.5}, {0, 1});
  const PairMarginals pm = empirical_pairs(Measure{sw});
  EXPECT_TRUE(pm.pi.isApprox(vec({0.5, 0.5})));
  Eigen::MatrixXd off(2, 2);
  off << 0.0, 0.5, 0.5, 0.0;
  for (const auto& J : pm.joints) EXPECT_TRUE(J.isApprox(off));

  // The empty cell of alpha is dropped.
  const FiniteAction lop({{0, 1}, {0, 1}}, {1.0, 0.0}, {0, 1});
  const PairMarginals one = empirical_pairs(Measure{lop});
  ASSERT_EQ(one.pi.size(), 1);
  EXPECT_EQ(one.pi(0), 1.0);
  EXPECT_EQ(one.joints[0](0, 0), 1.0);
}

TEST(RestrictFinite, SwapPoints) {
  const FiniteAction fa({{1, 0}, {1, 0}}, {0.5, 0.5}, {0, 1});
  const CosetAction act = swap_action();
  const FiniteAction h = restrict_finite(fa, act, schreier_transversal(act));
  EXPECT_EQ(h.rank(), 3);
  EXPECT_EQ(h.size(), 2);
  for (const auto& p : h.perms()) EXPECT_EQ(p, identity_permutation(2));
  EXPECT_TRUE(same_partition(h.alpha(), {0, 1}));
  const double f_H = f_limit(Measure{h}, GenSet::letters(3), 2).value;
  const double f_G = f_limit(Measure{fa}, GenSet::letters(2), 2).value;
  EXPECT_NEAR(f_G, -kLn2, 1e-14);
  EXPECT_NEAR(f_H, 2 * f_G, 1e-14);
}

TEST(RestrictFinite, IndexScalingOnRandomInstances) {
  Rng rng(83);
  for (int i = 0; i < 40; ++i) {
    const FiniteAction fa = random_finite_action(rng, 2, 1 + i % 6);
    const CosetAction act = random_coset_action(rng, 2, 1 + i % 4);
    const FiniteAction h = restrict_finite(fa, act, schreier_transversal(act));
    const EntropyReport rg = f_limit(Measure{fa}, GenSet::letters(2), fa.size());
    const EntropyReport rh = f_limit(Measure{h}, GenSet::letters(h.rank()), h.size());
    ASSERT_TRUE(rg.stabilized && rh.stabilized);
    EXPECT_NEAR(rh.value, act.index() * rg.value, 1e-9 * (1 + std::abs(rh.value)));
  }
}
