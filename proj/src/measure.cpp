#include "finv/measure.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "finv/error.hpp"

namespace finv {

TreeMarkovMeasure::TreeMarkovMeasure(Eigen::VectorXd pi, std::vector<Eigen::MatrixXd> trans)
    : pi_(std::move(pi)), forward_(std::move(trans)) {
  const Eigen::Index m = pi_.size();
  if (m < 1) throw Error(ErrorKind::NotADistribution, "empty alphabet");
  if (forward_.empty()) throw Error(ErrorKind::RankMismatch, "need at least one generator");
  if (std::abs(pi_.sum() - 1.0) > kModelTolerance || (pi_.array() < 0.0).any()) {
    throw Error(ErrorKind::NotADistribution, "pi must be a probability vector");
  }
  for (Eigen::Index a = 0; a < m; ++a) {
    if (!(pi_(a) > 0.0)) {
      throw Error(ErrorKind::ZeroMass, "pi(" + std::to_string(a) + ") = 0; prune the symbol before building the measure");
    }
  }
  for (std::size_t s = 0; s < forward_.size(); ++s) {
    const Eigen::MatrixXd& P = forward_[s];
    const std::string name = "P_" + std::to_string(s + 1);
    if (P.rows() != m || P.cols() != m) throw Error(ErrorKind::BadStochastic, name + " has the wrong shape");
    if ((P.array() < 0.0).any()) throw Error(ErrorKind::BadStochastic, name + " has a negative entry");
    if (((P.rowwise().sum().array() - 1.0).abs() > kModelTolerance).any()) {
      throw Error(ErrorKind::BadStochastic, name + " has a row not summing to 1");
    }
    const Eigen::RowVectorXd moved = pi_.transpose() * P;
    if (((moved - pi_.transpose()).array().abs() > kModelTolerance).any()) {
      throw Error(ErrorKind::NotStationary, "pi is not stationary for " + name);
    }
    Eigen::MatrixXd R(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) R(a, b) = pi_(b) * P(b, a) / pi_(a);
    }
    reverse_.push_back(std::move(R));
  }
}

Eigen::MatrixXd TreeMarkovMeasure::pair_joint(int s) const { return pi_.asDiagonal() * forward(s); }

TreeMarkovMeasure bernoulli(const Eigen::VectorXd& dist, int rank) {
  const Eigen::Index m = dist.size();
  Eigen::MatrixXd P(m, m);
  for (Eigen::Index a = 0; a < m; ++a) P.row(a) = dist.transpose();
  return TreeMarkovMeasure(dist, std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(rank), P));
}

FiniteAction::FiniteAction(std::vector<Permutation> perms, std::vector<double> mu, std::vector<int> alpha)
    : perms_(std::move(perms)), mu_(std::move(mu)), alpha_(std::move(alpha)) {
  const std::size_t n = mu_.size();
  if (n == 0) throw Error(ErrorKind::NotADistribution, "empty ground set");
  if (perms_.empty()) throw Error(ErrorKind::RankMismatch, "need at least one generator");
  if (alpha_.size() != n) throw Error(ErrorKind::ConfigError, "alpha must label every point");
  double total = 0.0;
  for (double p : mu_) {
    if (!(p >= 0.0)) throw Error(ErrorKind::NotADistribution, "negative mass");
    total += p;
  }
  if (std::abs(total - 1.0) > kModelTolerance) throw Error(ErrorKind::NotADistribution, "mu must sum to 1");
  for (std::size_t s = 0; s < perms_.size(); ++s) {
    const Permutation& p = perms_[s];
    if (p.size() != n || !is_bijection(p)) {
      throw Error(ErrorKind::NonBijective, "generator " + std::to_string(s + 1) + " is not a permutation");
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (std::abs(mu_[static_cast<std::size_t>(p[x])] - mu_[x]) > kModelTolerance) {
        throw Error(ErrorKind::NotInvariant, "mu is not invariant under generator " + std::to_string(s + 1));
      }
    }
    inverse_perms_.push_back(inverse_permutation(p));
  }
}

int FiniteAction::apply(Letter l, int x) const {
  const auto s = static_cast<std::size_t>(std::abs(l) - 1);
  return l > 0 ? perms_[s][static_cast<std::size_t>(x)] : inverse_perms_[s][static_cast<std::size_t>(x)];
}

int FiniteAction::act(const Word& w, int x) const {
  if (w.rank() != rank()) throw Error(ErrorKind::RankMismatch, "word rank differs from action rank");
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) x = apply(*it, x);
  return x;
}

Permutation FiniteAction::word_permutation(const Word& w) const {
  Permutation p(static_cast<std::size_t>(size()));
  for (int x = 0; x < size(); ++x) p[static_cast<std::size_t>(x)] = act(w, x);
  return p;
}

int measure_rank(const Measure& m) {
  return std::visit([](const auto& x) { return x.rank(); }, m);
}

Labeling canonical_labeling(const std::vector<int>& labels) {
  std::map<int, int> ids;
  Labeling out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = ids.emplace(labels[i], static_cast<int>(ids.size()));
    out[i] = it->second;
  }
  return out;
}

Labeling join_labeling(const FiniteAction& fa, const WordSet& F) {
  std::vector<Word> inverses;
  inverses.reserve(F.size());
  for (const auto& f : F) inverses.push_back(f.inverse());
  std::map<std::vector<int>, int> ids;
  Labeling out(static_cast<std::size_t>(fa.size()));
  std::vector<int> key(F.size());
  for (int x = 0; x < fa.size(); ++x) {
    for (std::size_t i = 0; i < inverses.size(); ++i) {
      key[i] = fa.alpha()[static_cast<std::size_t>(fa.act(inverses[i], x))];
    }
    auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
    out[static_cast<std::size_t>(x)] = it->second;
  }
  return out;
}

std::vector<double> cell_masses(const std::vector<double>& mu, const Labeling& cells) {
  std::vector<double> out;
  for (std::size_t x = 0; x < cells.size(); ++x) {
    const auto c = static_cast<std::size_t>(cells[x]);
    if (c >= out.size()) out.resize(c + 1, 0.0);
    out[c] += mu[x];
  }
  return out;
}

Labeling join(const Labeling& a, const Labeling& b) {
  std::map<std::pair<int, int>, int> ids;
  Labeling out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    auto [it, fresh] = ids.emplace(std::make_pair(a[x], b[x]), static_cast<int>(ids.size()));
    out[x] = it->second;
  }
  return out;
}

bool same_partition(const Labeling& a, const Labeling& b) {
  return a.size() == b.size() && canonical_labeling(a) == canonical_labeling(b);
}

}  // namespace finv
