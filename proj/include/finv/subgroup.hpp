#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "finv/cayley.hpp"
#include "finv/word.hpp"

namespace finv {

/// A permutation of {0..n-1} in one-line form: p[i] is the image of i.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation inverse_permutation(const Permutation& p);
bool is_bijection(const Permutation& p);

/// Parses cycle notation "(0 1 2)(3 4)", "(01)", "()" on n points.
/// Cycles without separators read one digit per point.
Permutation parse_cycles(std::string_view text, int n);
std::string format_cycles(const Permutation& p);

/// A finite-index subgroup H of the rank-r free group, given by the right
/// action of the generators on the right cosets {Hg}. Coset 0 is H itself.
class CosetAction {
 public:
  /// Throws NonBijective or NotTransitive.
  CosetAction(int rank, std::vector<Permutation> perms);

  int rank() const noexcept { return rank_; }
  int index() const noexcept { return index_; }
  const std::vector<Permutation>& perms() const noexcept { return perms_; }

  /// Image of coset c under one letter.
  int step(int c, Letter l) const;

  /// Coset H w, found by walking the Schreier graph from coset 0.
  int coset_of(const Word& w) const { return walk(0, w); }
  int walk(int start, const Word& w) const;
  bool contains(const Word& w) const { return coset_of(w) == 0; }

 private:
  int rank_;
  int index_;
  std::vector<Permutation> perms_;
  std::vector<Permutation> inverse_perms_;
};

enum class Connectivity { Right, Bi };

/// Coset representatives and the Schreier free basis built from them.
struct TransversalData {
  int rank = 0;
  /// delta[i] lies in coset i; delta[0] is the identity.
  std::vector<Word> delta;
  Connectivity connectivity = Connectivity::Right;
  /// Free generators t = delta_t s_t r(delta_t s_t)^{-1} of H.
  std::vector<Word> gens;
  /// For each generator, (coset of delta_t, s_t) with s_t a positive letter.
  std::vector<std::pair<int, int>> witnesses;
  /// external[c][s-1] is the index in gens of c(delta_c, s), or -1 if the
  /// pair (delta_c, s) is an internal tree edge.
  std::vector<std::vector<int>> external;

  int index() const noexcept { return static_cast<int>(delta.size()); }
  WordSet delta_set() const { return WordSet(delta.begin(), delta.end()); }
};

/// Length-lex-least representative of every coset, found by breadth-first
/// search; the result is prefix closed, hence right connected.
TransversalData schreier_transversal(const CosetAction& act);

/// Same representatives, additionally verified to be left connected.
/// Throws NotNormal when the subgroup is not normal.
TransversalData bi_transversal(const CosetAction& act);

bool is_normal(const CosetAction& act);

/// Default cap on the size of the permutation image group.
inline constexpr std::size_t kDefaultImageBound = 10080;

/// Regular coset action of the kernel of G -> Sym(index).
/// Throws ImageTooLarge past `bound` elements.
CosetAction normal_core(const CosetAction& act, std::size_t bound = kDefaultImageBound);

/// A word over the Schreier generators: +k / -k means gens[k-1] or its inverse.
using TWord = std::vector<int>;

/// Schreier rewriting of h in H as a freely reduced word in the generators.
/// Throws NotInSubgroup.
TWord rewrite_in_T(const TransversalData& td, const CosetAction& act, const Word& h);

/// Multiplies a T-word back out into G.
Word evaluate_T(const TransversalData& td, const TWord& tw);

/// r_H = index * (r_G - 1) + 1.
int subgroup_rank(int index, int rank);

struct IdentityCheck {
  bool holds = false;
  EdgeVector lhs;
  EdgeVector rhs;
};

/// sum_t (R(t D u D) - R(D)) == |T| R(D) + sum_s (R(D s u D) - R(D)).
IdentityCheck check_subedge_identity(const TransversalData& td, const CosetAction& act);

struct CombCheck {
  IdentityCheck main;
  IdentityCheck right_boundary;   // |D| sum_s s == sum_s (R(D s u D) - R(D)) + R(D)
  IdentityCheck left_growth_rule;  // sum_s (R(s D u D) - R(D)) == sum_s s + (r-1) R(D)
  bool holds() const noexcept { return main.holds && right_boundary.holds && left_growth_rule.holds; }
};

/// Throws NotBiConnected or MissingIdentity.
CombCheck check_comb_identity(const WordSet& delta);

using Rational = boost::rational<long long>;

/// sum 1/e_i - sum 1/v_j for a finite graph of finite groups.
Rational kps_scaling(const std::vector<long long>& edge_orders, const std::vector<long long>& vertex_orders);

}  // namespace finv
