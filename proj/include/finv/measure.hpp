#pragma once

#include <map>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "finv/cayley.hpp"
#include "finv/subgroup.hpp"
#include "finv/word.hpp"

namespace finv {

/// Tolerance for the stochastic, stationarity and invariance checks.
inline constexpr double kModelTolerance = 1e-12;

/// Shift-invariant Markov measure on K^G over the right Cayley tree: the
/// symbol at g s is drawn from row x(g) of P_s, and from row x(g) of the
/// reversed kernel P_{s^-1}(a, b) = pi(b) P_s(b, a) / pi(a) for inverse steps.
class TreeMarkovMeasure {
 public:
  /// Throws NotADistribution, ZeroMass, BadStochastic or NotStationary.
  TreeMarkovMeasure(Eigen::VectorXd pi, std::vector<Eigen::MatrixXd> trans);

  int alphabet_size() const noexcept { return static_cast<int>(pi_.size()); }
  int rank() const noexcept { return static_cast<int>(forward_.size()); }
  const Eigen::VectorXd& pi() const noexcept { return pi_; }
  const Eigen::MatrixXd& forward(int s) const { return forward_.at(static_cast<std::size_t>(s - 1)); }
  const Eigen::MatrixXd& reverse(int s) const { return reverse_.at(static_cast<std::size_t>(s - 1)); }
  /// Transition matrix for one step along letter l.
  const Eigen::MatrixXd& kernel(Letter l) const { return l > 0 ? forward(l) : reverse(-l); }
  /// J_s(a, b) = mu(x(1) = a, x(s) = b).
  Eigen::MatrixXd pair_joint(int s) const;

 private:
  Eigen::VectorXd pi_;
  std::vector<Eigen::MatrixXd> forward_;
  std::vector<Eigen::MatrixXd> reverse_;
};

inline TreeMarkovMeasure new_tree_markov(Eigen::VectorXd pi, std::vector<Eigen::MatrixXd> trans) {
  return TreeMarkovMeasure(std::move(pi), std::move(trans));
}

/// Product measure dist^G: every row of every kernel equals dist.
TreeMarkovMeasure bernoulli(const Eigen::VectorXd& dist, int rank);

/// A finite G-set with an invariant probability vector and a base partition.
/// perms[s-1][x] = s . x (left action).
class FiniteAction {
 public:
  /// Throws NonBijective, NotADistribution or NotInvariant.
  FiniteAction(std::vector<Permutation> perms, std::vector<double> mu, std::vector<int> alpha);

  int size() const noexcept { return static_cast<int>(mu_.size()); }
  int rank() const noexcept { return static_cast<int>(perms_.size()); }
  const std::vector<Permutation>& perms() const noexcept { return perms_; }
  const std::vector<double>& mu() const noexcept { return mu_; }
  const std::vector<int>& alpha() const noexcept { return alpha_; }

  int apply(Letter l, int x) const;
  /// w . x for the left action.
  int act(const Word& w, int x) const;
  Permutation word_permutation(const Word& w) const;

 private:
  std::vector<Permutation> perms_;
  std::vector<Permutation> inverse_perms_;
  std::vector<double> mu_;
  std::vector<int> alpha_;
};

inline FiniteAction new_finite_action(std::vector<Permutation> perms, std::vector<double> mu, std::vector<int> alpha) {
  return FiniteAction(std::move(perms), std::move(mu), std::move(alpha));
}

using Measure = std::variant<TreeMarkovMeasure, FiniteAction>;

int measure_rank(const Measure& m);

/// Cell ids 0..k-1 numbered by first appearance over the ground set.
using Labeling = std::vector<int>;

Labeling canonical_labeling(const std::vector<int>& labels);

/// Partition F . alpha: x is labelled by (alpha(f^{-1} x))_{f in F}.
Labeling join_labeling(const FiniteAction& fa, const WordSet& F);

/// mu-mass of each cell.
std::vector<double> cell_masses(const std::vector<double>& mu, const Labeling& cells);

/// Common refinement of two labelings.
Labeling join(const Labeling& a, const Labeling& b);

/// Same partition of the ground set (cell names ignored).
bool same_partition(const Labeling& a, const Labeling& b);

/// Assignment of symbols to finitely many group elements.
using CylinderAssignment = std::map<Word, int>;

}  // namespace finv
