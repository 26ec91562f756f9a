#pragma once

#include <vector>

#include <Eigen/Dense>

#include "finv/cayley.hpp"
#include "finv/entropy.hpp"
#include "finv/measure.hpp"
#include "finv/subgroup.hpp"

namespace finv {

/// Patterns of probability below this are dropped from derived alphabets.
inline constexpr double kPruneThreshold = 1e-14;
/// Allowed distance of the kept mass from 1 after pruning.
inline constexpr double kRenormTolerance = 1e-12;

/// A Markov measure whose symbols stand for patterns on a finite block of
/// the original tree: legend[k][i] is the original symbol at coords[i].
struct PatternMeasure {
  TreeMarkovMeasure measure;
  std::vector<Word> coords;
  std::vector<std::vector<int>> legend;
};

/// Markov measure of the subgroup H acting with the Schreier basis T: the new
/// symbol at h is the pattern x|_{h Delta}. Throws InternalError if the result
/// fails Markov validation.
PatternMeasure restrict_markov(const TreeMarkovMeasure& tm, const CosetAction& act, const TransversalData& td);

/// Recoding over a left-connected block U containing the identity: the new
/// symbol at g is x|_{gU}. Throws NotLeftConnected or MissingIdentity.
PatternMeasure recode_markov(const TreeMarkovMeasure& tm, const WordSet& U);

/// Pair marginals J_s(a, b) = mu(A_a n s . A_b) and the cell masses pi.
struct PairMarginals {
  Eigen::VectorXd pi;
  std::vector<Eigen::MatrixXd> joints;
};

/// For finite actions the cells of alpha with zero mass are left out.
PairMarginals empirical_pairs(const Measure& mu);

/// P_s(a, b) = J_s(a, b) / pi(a). Throws InconsistentMarginals or ZeroMass.
TreeMarkovMeasure markov_approx(const Eigen::VectorXd& pi, const std::vector<Eigen::MatrixXd>& joints);

/// H acting on the same space through T, with base partition Delta . alpha.
FiniteAction restrict_finite(const FiniteAction& fa, const CosetAction& act, const TransversalData& td);

}  // namespace finv
