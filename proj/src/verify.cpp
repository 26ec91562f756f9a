#include "finv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "finv/entropy.hpp"
#include "finv/error.hpp"
#include "finv/random.hpp"
#include "finv/transforms.hpp"

namespace finv {

namespace {

/// Slack for the finitary inequalities.
constexpr double kInequalitySlack = 1e-9;

std::string join_words(const std::vector<Word>& ws) {
  std::string out = "[";
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? ", " : "") + ws[i].str();
  return out + "]";
}

CheckRecord exact(std::string name, long long lhs, long long rhs, std::string anchor) {
  return CheckRecord{std::move(name), std::to_string(lhs), std::to_string(rhs), 0.0, lhs == rhs, std::move(anchor)};
}

CheckRecord exact(std::string name, const IdentityCheck& c, std::string anchor) {
  return CheckRecord{std::move(name), c.lhs.str(), c.rhs.str(), 0.0, c.holds, std::move(anchor)};
}

}  // namespace

int VerificationReport::passed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; }));
}

int VerificationReport::failed() const { return static_cast<int>(checks.size()) - passed(); }

std::string format_real(double x) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

CheckRecord check_close(std::string name, double lhs, double rhs, double tol, double scale, std::string anchor) {
  const bool pass = std::abs(lhs - rhs) <= tol * (1.0 + std::abs(scale));
  return CheckRecord{std::move(name), format_real(lhs), format_real(rhs), tol, pass, std::move(anchor)};
}

SubgroupValues subgroup_values(const Measure& mu, const CosetAction& act, int n_max) {
  if (act.rank() != measure_rank(mu)) throw Error(ErrorKind::RankMismatch, "coset action and measure ranks differ");
  SubgroupValues v;
  v.index = act.index();
  v.td = schreier_transversal(act);
  if (const auto* tm = std::get_if<TreeMarkovMeasure>(&mu)) {
    v.f_G = f_markov(*tm);
    v.f_H = f_markov(restrict_markov(*tm, act, v.td).measure);
    return v;
  }
  const auto& fa = std::get<FiniteAction>(mu);
  const EntropyReport g = f_limit(fa, GenSet::letters(fa.rank()), n_max);
  const FiniteAction restricted = restrict_finite(fa, act, v.td);
  const EntropyReport h = f_limit(restricted, GenSet::letters(restricted.rank()), n_max);
  v.f_G = g.value;
  v.f_H = h.value;
  v.stabilized = g.stabilized && h.stabilized;
  return v;
}

VerificationReport verify_subgroup(const Measure& mu, const CosetAction& act, double tol, int n_max) {
  const SubgroupValues v = subgroup_values(mu, act, n_max);
  VerificationReport rep;
  rep.command = "verify-subgroup";
  rep.info = {
      {"measure", std::holds_alternative<TreeMarkovMeasure>(mu) ? "markov" : "finite"},
      {"index", std::to_string(v.index)},
      {"subgroup_rank", std::to_string(v.td.gens.size())},
      {"delta", join_words(v.td.delta)},
      {"T", join_words(v.td.gens)},
      {"f_G", format_real(v.f_G)},
      {"f_H", format_real(v.f_H)},
  };
  if (std::holds_alternative<FiniteAction>(mu)) {
    rep.checks.push_back(CheckRecord{"ball partitions stabilized", v.stabilized ? "yes" : "no", "yes", 0.0, v.stabilized, anchor::kStabilization});
  }
  rep.checks.push_back(check_close("f_H = index * f_G", v.f_H, v.index * v.f_G, tol, v.f_G, anchor::kIndexScaling));
  rep.checks.push_back(exact("|T| = index * (r - 1) + 1", static_cast<long long>(v.td.gens.size()), subgroup_rank(v.index, act.rank()),
                             anchor::kRankFormula));
  return rep;
}

VerificationReport verify_identities(int rank, int radius, std::uint64_t seed, int count) {
  if (rank < 1) throw Error(ErrorKind::ConfigError, "rank must be positive");
  if (radius < 0) throw Error(ErrorKind::ConfigError, "radius must be non-negative");
  VerificationReport rep;
  rep.command = "verify-identities";
  rep.info = {{"rank", std::to_string(rank)}, {"radius", std::to_string(radius)}, {"seed", std::to_string(seed)}, {"count", std::to_string(count)}};
  Rng rng(seed);
  std::uniform_int_distribution<int> size_dist(1, 40);
  std::uniform_int_distribution<int> index_dist(1, 6);
  for (int i = 0; i < count; ++i) {
    const std::string tag = " #" + std::to_string(i);

    const WordSet K = random_connected_set(rng, rank, size_dist(rng), Side::Left, radius);
    const CountCheck ball = check_ball_identity(rank, K);
    rep.checks.push_back(exact("(1 - 2r)|K| + sum |sK u K| = 1" + tag, ball.lhs, ball.rhs, anchor::kBallIdentity));

    const WordSet D = random_bi_connected_set(rng, rank, size_dist(rng), radius);
    const CombCheck comb = check_comb_identity(D);
    rep.checks.push_back(exact("comb main" + tag, comb.main, anchor::kCombIdentity));
    rep.checks.push_back(exact("comb right boundary" + tag, comb.right_boundary, anchor::kCombIdentity));
    rep.checks.push_back(exact("comb left growth" + tag, comb.left_growth_rule, anchor::kCombIdentity));

    const CosetAction act = random_coset_action(rng, rank, index_dist(rng));
    const TransversalData td = schreier_transversal(act);
    rep.checks.push_back(exact("subgroup edges" + tag, check_subedge_identity(td, act), anchor::kSubgroupEdge));
    rep.checks.push_back(exact("|T| = n(r - 1) + 1" + tag, static_cast<long long>(td.gens.size()), subgroup_rank(act.index(), rank),
                               anchor::kRankFormula));
  }
  return rep;
}

CheckRecord check_lower_bound(const Measure& mu, const CosetAction& act) {
  const int rank = measure_rank(mu);
  const TransversalData td = schreier_transversal(act);
  const WordSet V = td.delta_set();
  WordSet TV = product(WordSet(td.gens.begin(), td.gens.end()), V);
  TV.insert(Word::identity(rank));
  const WordSet W = tree_hull(TV, Side::Left);
  const double lhs = big_F(mu, GenSet(td.gens), V).value;
  const double rhs = act.index() * big_F(mu, GenSet::letters(rank), W).value;
  return CheckRecord{"F_H(T, V) >= index * F_G(S, W)", format_real(lhs), format_real(rhs), kInequalitySlack,
                     lhs >= rhs - kInequalitySlack, anchor::kLowerBound};
}

CheckRecord check_upper_bound(const Measure& mu, const CosetAction& act, const WordSet& U) {
  const int rank = measure_rank(mu);
  const TransversalData td = schreier_transversal(act);
  const double lhs = big_F(mu, GenSet(td.gens), product(td.delta_set(), U)).value;
  const double rhs = act.index() * big_F(mu, GenSet::letters(rank), U).value;
  return CheckRecord{"F_H(T, Delta U) <= index * F_G(S, U)", format_real(lhs), format_real(rhs), kInequalitySlack,
                     lhs <= rhs + kInequalitySlack, anchor::kUpperBound};
}

CheckRecord check_pair_approximation(const Measure& mu, double tol) {
  const PairMarginals pm = empirical_pairs(mu);
  const TreeMarkovMeasure approx = markov_approx(pm.pi, pm.joints);
  const WordSet base{Word::identity(measure_rank(mu))};
  const double lhs = big_F(mu, GenSet::letters(measure_rank(mu)), base).value;
  return check_close("F_G(mu) = f(approximation)", lhs, f_markov(approx), tol, 0.0, anchor::kPairApproximation);
}

}  // namespace finv
