#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "finv/cayley.hpp"
#include "finv/measure.hpp"
#include "finv/subgroup.hpp"

namespace finv {

/// Descriptive names of the identities and inequalities being checked.
namespace anchor {
inline constexpr const char* kIndexScaling = "index-scaling formula";
inline constexpr const char* kRankFormula = "rank formula";
inline constexpr const char* kBallIdentity = "ball identity";
inline constexpr const char* kCombIdentity = "comb identity";
inline constexpr const char* kSubgroupEdge = "subgroup edge identity";
inline constexpr const char* kStabilization = "join-partition stabilization";
inline constexpr const char* kPairApproximation = "pair-marginal approximation";
inline constexpr const char* kLowerBound = "finitary lower bound";
inline constexpr const char* kUpperBound = "finitary upper bound";
}  // namespace anchor

struct CheckRecord {
  std::string name;
  std::string lhs;
  std::string rhs;
  double tolerance = 0.0;
  bool pass = false;
  std::string anchor;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct VerificationReport {
  std::string command;
  std::string config_hash;
  /// Reported quantities (f_G, index, Delta, ...) in insertion order.
  std::vector<std::pair<std::string, std::string>> info;
  std::vector<CheckRecord> checks;

  int passed() const;
  int failed() const;
  /// 0 when every check passes, 1 otherwise.
  int exit_status() const { return failed() == 0 ? 0 : 1; }

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Shortest decimal form that reads back to the same double.
std::string format_real(double x);

/// |a - b| <= tol * (1 + |scale|).
CheckRecord check_close(std::string name, double lhs, double rhs, double tol, double scale, std::string anchor);

struct SubgroupValues {
  double f_G = 0.0;
  double f_H = 0.0;
  int index = 0;
  TransversalData td;
  bool stabilized = true;
};

/// f_G and f_H, the latter computed on the restricted measure or action.
/// n_max bounds the ball radius for finite actions.
SubgroupValues subgroup_values(const Measure& mu, const CosetAction& act, int n_max);

/// Index scaling and rank formula for one measure and subgroup.
VerificationReport verify_subgroup(const Measure& mu, const CosetAction& act, double tol, int n_max);

/// Exact combinatorial identities over `count` random instances.
VerificationReport verify_identities(int rank, int radius, std::uint64_t seed, int count);

/// F_H(T, Delta . alpha) >= index * F_G(S, W . alpha) where W is the left hull
/// of T Delta u {1}.
CheckRecord check_lower_bound(const Measure& mu, const CosetAction& act);

/// F_H(T, Delta U . alpha) <= index * F_G(S, U . alpha).
CheckRecord check_upper_bound(const Measure& mu, const CosetAction& act, const WordSet& U);

/// F_G(S, alpha) of the measure equals f of its pair-marginal Markov approximation.
CheckRecord check_pair_approximation(const Measure& mu, double tol);

}  // namespace finv
