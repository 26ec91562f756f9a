#include "finv/transforms.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "finv/error.hpp"
#include "finv/marginal.hpp"

namespace finv {

namespace {

/// Markov measure on patterns over `coords`, stepping by each word in
/// `steps`. A step w pairs the pattern on coords with the pattern on
/// w . coords; coordinates shared by both blocks must agree.
PatternMeasure pattern_measure(const TreeMarkovMeasure& tm, const std::vector<Word>& coords, const std::vector<Word>& steps) {
  const JointKernel base(tm, coords);
  const std::vector<double> probs = base.dense();

  std::vector<std::vector<int>> legend;
  std::vector<double> kept;
  std::vector<int> sym(coords.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < kPruneThreshold) continue;
    base.decode(i, sym);
    legend.push_back(sym);
    kept.push_back(probs[i]);
  }
  double total = 0.0;
  for (double p : kept) total += p;
  if (std::abs(total - 1.0) > kRenormTolerance) {
    throw Error(ErrorKind::InternalError, "pruned mass " + std::to_string(1.0 - total) + " exceeds tolerance");
  }
  const auto k = static_cast<Eigen::Index>(kept.size());
  Eigen::VectorXd pi(k);
  for (Eigen::Index i = 0; i < k; ++i) pi(i) = kept[static_cast<std::size_t>(i)] / total;

  std::unordered_map<Word, std::size_t, WordHash> coord_pos;
  for (std::size_t c = 0; c < coords.size(); ++c) coord_pos.emplace(coords[c], c);

  std::vector<Eigen::MatrixXd> trans;
  for (const auto& w : steps) {
    // Domain: coords followed by the new coordinates of w . coords.
    std::vector<Word> domain = coords;
    std::vector<std::size_t> where(coords.size());  // position of w c in domain
    std::vector<int> shared_with(coords.size(), -1);  // index in coords if w c is shared
    for (std::size_t c = 0; c < coords.size(); ++c) {
      Word wc = mul(w, coords[c]);
      if (auto it = coord_pos.find(wc); it != coord_pos.end()) {
        where[c] = it->second;
        shared_with[c] = static_cast<int>(it->second);
      } else {
        where[c] = domain.size();
        domain.push_back(std::move(wc));
      }
    }
    const JointKernel joint(tm, domain);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(k, k);
    const auto kk = static_cast<std::int64_t>(k);
#pragma omp parallel
    {
      JointKernel::Scratch sc = joint.make_scratch();
      std::vector<int> tuple(domain.size());
#pragma omp for schedule(dynamic)
      for (std::int64_t a = 0; a < kk; ++a) {
        const auto& pa = legend[static_cast<std::size_t>(a)];
        for (std::size_t c = 0; c < coords.size(); ++c) tuple[c] = pa[c];
        for (std::int64_t b = 0; b < kk; ++b) {
          const auto& pb = legend[static_cast<std::size_t>(b)];
          bool consistent = true;
          for (std::size_t c = 0; c < coords.size() && consistent; ++c) {
            if (shared_with[c] >= 0) consistent = pa[static_cast<std::size_t>(shared_with[c])] == pb[c];
            else tuple[where[c]] = pb[c];
          }
          if (consistent) P(a, b) = joint.probability(tuple, sc);
        }
      }
    }
    for (Eigen::Index a = 0; a < k; ++a) {
      const double row = P.row(a).sum();
      if (!(row > 0.0)) throw Error(ErrorKind::InternalError, "kept pattern has no continuation");
      P.row(a) /= row;
    }
    trans.push_back(std::move(P));
  }

  try {
    return PatternMeasure{TreeMarkovMeasure(std::move(pi), std::move(trans)), coords, std::move(legend)};
  } catch (const Error& e) {
    throw Error(ErrorKind::InternalError, std::string("derived measure failed validation: ") + e.what());
  }
}

}  // namespace

PatternMeasure restrict_markov(const TreeMarkovMeasure& tm, const CosetAction& act, const TransversalData& td) {
  if (act.rank() != tm.rank() || td.rank != tm.rank()) throw Error(ErrorKind::RankMismatch, "subgroup and measure ranks differ");
  if (td.index() != act.index()) throw Error(ErrorKind::InternalError, "transversal does not match coset action");
  return pattern_measure(tm, td.delta, td.gens);
}

PatternMeasure recode_markov(const TreeMarkovMeasure& tm, const WordSet& U) {
  if (U.empty() || !U.contains(Word::identity(tm.rank()))) throw Error(ErrorKind::MissingIdentity, to_string(U));
  if (!is_connected(U, Side::Left)) throw Error(ErrorKind::NotLeftConnected, to_string(U));
  std::vector<Word> steps;
  for (int s = 1; s <= tm.rank(); ++s) steps.push_back(Word::generator(tm.rank(), s));
  return pattern_measure(tm, std::vector<Word>(U.begin(), U.end()), steps);
}

PairMarginals empirical_pairs(const Measure& mu) {
  if (const auto* tm = std::get_if<TreeMarkovMeasure>(&mu)) {
    PairMarginals out{tm->pi(), {}};
    for (int s = 1; s <= tm->rank(); ++s) out.joints.push_back(tm->pair_joint(s));
    return out;
  }
  const auto& fa = std::get<FiniteAction>(mu);
  const Labeling cells = canonical_labeling(fa.alpha());
  const std::vector<double> mass = cell_masses(fa.mu(), cells);
  std::vector<int> symbol(mass.size(), -1);
  int k = 0;
  for (std::size_t c = 0; c < mass.size(); ++c) {
    if (mass[c] > 0.0) symbol[c] = k++;
  }
  PairMarginals out{Eigen::VectorXd(k), {}};
  for (std::size_t c = 0; c < mass.size(); ++c) {
    if (symbol[c] >= 0) out.pi(symbol[c]) = mass[c];
  }
  for (int s = 1; s <= fa.rank(); ++s) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k, k);
    for (int x = 0; x < fa.size(); ++x) {
      const double p = fa.mu()[static_cast<std::size_t>(x)];
      if (p == 0.0) continue;
      const int a = symbol[static_cast<std::size_t>(cells[static_cast<std::size_t>(x)])];
      const int b = symbol[static_cast<std::size_t>(cells[static_cast<std::size_t>(fa.apply(-s, x))])];
      J(a, b) += p;
    }
    out.joints.push_back(std::move(J));
  }
  return out;
}

TreeMarkovMeasure markov_approx(const Eigen::VectorXd& pi, const std::vector<Eigen::MatrixXd>& joints) {
  const Eigen::Index m = pi.size();
  for (Eigen::Index a = 0; a < m; ++a) {
    if (!(pi(a) > 0.0)) throw Error(ErrorKind::ZeroMass, "pi(" + std::to_string(a) + ") = 0");
  }
  std::vector<Eigen::MatrixXd> trans;
  for (std::size_t s = 0; s < joints.size(); ++s) {
    const Eigen::MatrixXd& J = joints[s];
    const std::string name = "J_" + std::to_string(s + 1);
    if (J.rows() != m || J.cols() != m) throw Error(ErrorKind::InconsistentMarginals, name + " has the wrong shape");
    if ((J.array() < 0.0).any()) throw Error(ErrorKind::InconsistentMarginals, name + " has a negative entry");
    if (std::abs(J.sum() - 1.0) > kModelTolerance) throw Error(ErrorKind::InconsistentMarginals, name + " does not sum to 1");
    if (((J.rowwise().sum() - pi).array().abs() > kModelTolerance).any()) {
      throw Error(ErrorKind::InconsistentMarginals, name + " row sums differ from pi");
    }
    if (((J.colwise().sum().transpose() - pi).array().abs() > kModelTolerance).any()) {
      throw Error(ErrorKind::InconsistentMarginals, name + " column sums differ from pi");
    }
    Eigen::MatrixXd P(m, m);
    for (Eigen::Index a = 0; a < m; ++a) P.row(a) = J.row(a) / J.row(a).sum();
    trans.push_back(std::move(P));
  }
  return TreeMarkovMeasure(pi, std::move(trans));
}

FiniteAction restrict_finite(const FiniteAction& fa, const CosetAction& act, const TransversalData& td) {
  if (act.rank() != fa.rank() || td.rank != fa.rank()) throw Error(ErrorKind::RankMismatch, "subgroup and action ranks differ");
  std::vector<Permutation> perms;
  for (const auto& t : td.gens) perms.push_back(fa.word_permutation(t));
  return FiniteAction(std::move(perms), fa.mu(), join_labeling(fa, td.delta_set()));
}

}  // namespace finv
