#include "finv/entropy.hpp"

#include <cmath>
#include <set>
#include <string>

#include "finv/error.hpp"
#include "finv/marginal.hpp"

namespace finv {

namespace {

constexpr double kDistributionTolerance = 1e-9;

double neg_plogp(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

/// Labels x by beta(w^{-1} x): the partition w . beta.
Labeling translate(const FiniteAction& fa, const Labeling& beta, const Word& w) {
  const Word winv = w.inverse();
  Labeling out(beta.size());
  for (int x = 0; x < fa.size(); ++x) out[static_cast<std::size_t>(x)] = beta[static_cast<std::size_t>(fa.act(winv, x))];
  return out;
}

double partition_entropy(const FiniteAction& fa, const Labeling& cells) {
  return shannon(cell_masses(fa.mu(), cells));
}

EntropyReport assemble(double base_entropy, std::vector<double> terms, const GenSet& gens) {
  EntropyReport rep;
  rep.base_entropy = base_entropy;
  rep.terms = std::move(terms);
  double v = (1.0 - 2.0 * gens.size()) * base_entropy;
  for (double t : rep.terms) v += t;
  rep.value = v;
  for (const auto& w : gens.words()) rep.term_labels.push_back(w.str());
  return rep;
}

EntropyReport big_F_finite(const FiniteAction& fa, const GenSet& gens, const Labeling& beta) {
  std::vector<double> terms;
  for (const auto& w : gens.words()) terms.push_back(partition_entropy(fa, join(beta, translate(fa, beta, w))));
  return assemble(partition_entropy(fa, beta), std::move(terms), gens);
}

void check_gens_rank(const GenSet& gens, int rank) {
  if (gens.ambient_rank() != rank) throw Error(ErrorKind::RankMismatch, "generator words live in a different rank");
}

}  // namespace

double shannon(std::span<const double> dist) {
  double total = 0.0;
  double h = 0.0;
  for (double p : dist) {
    if (!(p >= 0.0)) throw Error(ErrorKind::NotADistribution, "negative probability");
    total += p;
    h += neg_plogp(p);
  }
  if (std::abs(total - 1.0) > kDistributionTolerance) {
    throw Error(ErrorKind::NotADistribution, "probabilities sum to " + std::to_string(total));
  }
  return h;
}

double shannon(const Eigen::VectorXd& dist) { return shannon(std::span<const double>(dist.data(), static_cast<std::size_t>(dist.size()))); }

double conditional_shannon(const Eigen::MatrixXd& joint) {
  const Eigen::MatrixXd flat = joint;
  const double h_joint = shannon(std::span<const double>(flat.data(), static_cast<std::size_t>(flat.size())));
  const Eigen::VectorXd b = joint.colwise().sum().transpose();
  return h_joint - shannon(b);
}

GenSet::GenSet(std::vector<Word> words) : words_(std::move(words)) {
  if (words_.empty()) throw Error(ErrorKind::BadGenSet, "empty generator list");
  std::set<Word> seen;
  for (const auto& w : words_) {
    if (w.rank() != words_.front().rank()) throw Error(ErrorKind::RankMismatch, "generator words differ in rank");
    if (w.is_identity()) throw Error(ErrorKind::BadGenSet, "identity in generator list");
    if (!seen.insert(w).second) throw Error(ErrorKind::BadGenSet, "repeated generator " + w.str());
  }
}

GenSet GenSet::letters(int rank) {
  std::vector<Word> ws;
  for (int s = 1; s <= rank; ++s) ws.push_back(Word::generator(rank, s));
  return GenSet(std::move(ws));
}

WordSet gen_ball(const GenSet& gens, int radius) {
  WordSet out;
  for (const auto& tw : ball_words(gens.size(), radius)) out.insert(substitute(tw, gens.words()));
  return out;
}

double EntropyReport::consistency_gap() const {
  double v = (1.0 - 2.0 * static_cast<double>(terms.size())) * base_entropy;
  for (double t : terms) v += t;
  return value - v;
}

double EntropyReport::conditional_form() const {
  double v = (1.0 - static_cast<double>(terms.size())) * base_entropy;
  for (double t : terms) v += t - base_entropy;
  return v;
}

EntropyReport big_F(const Measure& mu, const GenSet& gens, const WordSet& base) {
  if (base.empty()) throw Error(ErrorKind::InternalError, "empty base set");
  check_gens_rank(gens, measure_rank(mu));
  if (const auto* fa = std::get_if<FiniteAction>(&mu)) return big_F_finite(*fa, gens, join_labeling(*fa, base));
  const auto& tm = std::get<TreeMarkovMeasure>(mu);
  std::vector<double> terms(static_cast<std::size_t>(gens.size()));
  for (std::size_t i = 0; i < terms.size(); ++i) {
    terms[i] = joint_entropy(tm, set_union(base, left_translate(gens[i], base)));
  }
  return assemble(joint_entropy(tm, base), std::move(terms), gens);
}

double f_markov(const TreeMarkovMeasure& tm) {
  double v = (1.0 - 2.0 * tm.rank()) * shannon(tm.pi());
  for (int s = 1; s <= tm.rank(); ++s) {
    const Eigen::MatrixXd J = tm.pair_joint(s);
    v += shannon(std::span<const double>(J.data(), static_cast<std::size_t>(J.size())));
  }
  return v;
}

EntropyReport f_limit(const Measure& mu, const GenSet& gens, int n_max) {
  if (n_max < 0) throw Error(ErrorKind::ConfigError, "n_max must be non-negative");
  check_gens_rank(gens, measure_rank(mu));
  EntropyReport rep;
  std::vector<double> seq;
  auto push = [&](EntropyReport r) {
    if (!seq.empty() && r.value > seq.back() + kMonotoneSlack) {
      throw Error(ErrorKind::InternalError, "F increased from " + std::to_string(seq.back()) + " to " + std::to_string(r.value));
    }
    seq.push_back(r.value);
    rep = std::move(r);
  };

  if (const auto* fa = std::get_if<FiniteAction>(&mu)) {
    // B(n+1) . alpha is the join of l . (B(n) . alpha) over l in {1} u T u T^{-1}.
    Labeling beta = canonical_labeling(fa->alpha());
    bool stable = false;
    for (int n = 0; n <= n_max; ++n) {
      push(big_F_finite(*fa, gens, beta));
      Labeling next = beta;
      for (const auto& w : gens.words()) {
        next = join(next, translate(*fa, beta, w));
        next = join(next, translate(*fa, beta, w.inverse()));
      }
      if (same_partition(next, beta)) {
        stable = true;
        break;
      }
      beta = canonical_labeling(next);
    }
    rep.sequence = std::move(seq);
    rep.stabilized = stable;
    return rep;
  }

  for (int n = 0; n <= n_max; ++n) push(big_F(mu, gens, gen_ball(gens, n)));
  rep.sequence = std::move(seq);
  rep.stabilized = false;
  return rep;
}

double shannon_join_edge(const TreeMarkovMeasure& tm, const WordSet& F) {
  if (F.empty() || !is_connected(F, Side::Right)) throw Error(ErrorKind::NotRightConnected, to_string(F));
  const double h = shannon(tm.pi());
  const EdgeVector ev = edge_vector(F);
  double v = h;
  for (int s = 1; s <= tm.rank(); ++s) {
    const Eigen::MatrixXd J = tm.pair_joint(s);
    const double hj = shannon(std::span<const double>(J.data(), static_cast<std::size_t>(J.size())));
    v += static_cast<double>(ev.counts[static_cast<std::size_t>(s - 1)]) * (hj - h);
  }
  return v;
}

CountCheck check_ball_identity(int rank, const WordSet& K) {
  if (K.empty() || !is_connected(K, Side::Left)) throw Error(ErrorKind::NotLeftConnected, to_string(K));
  const auto n = static_cast<long long>(K.size());
  long long lhs = (1 - 2LL * rank) * n;
  for (int s = 1; s <= rank; ++s) {
    lhs += static_cast<long long>(set_union(K, left_translate(Word::generator(rank, s), K)).size());
  }
  return CountCheck{lhs == 1, lhs, 1};
}

DeltaInequality check_delta_inequality(const TreeMarkovMeasure& tm, const WordSet& delta) {
  DeltaInequality d;
  d.per_element = shannon_join_edge(tm, delta) / static_cast<double>(delta.size());
  d.f = f_markov(tm);
  d.base = shannon(tm.pi());
  d.holds = d.f <= d.per_element + kCrossTolerance && d.per_element <= d.base + kCrossTolerance;
  return d;
}

}  // namespace finv
