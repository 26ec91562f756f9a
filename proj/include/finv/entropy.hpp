#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "finv/cayley.hpp"
#include "finv/measure.hpp"
#include "finv/word.hpp"

namespace finv {

/// Tolerance for cross-method equalities.
inline constexpr double kCrossTolerance = 1e-9;
/// Slack allowed in the monotonicity assertion of f_limit.
inline constexpr double kMonotoneSlack = 1e-12;

/// Shannon entropy in nats with 0 log 0 = 0. Throws NotADistribution when
/// entries are negative or do not sum to 1 within 1e-9.
double shannon(std::span<const double> dist);
double shannon(const Eigen::VectorXd& dist);

/// H(A | B) for a joint with rows indexed by A and columns by B.
double conditional_shannon(const Eigen::MatrixXd& joint);

/// Ordered list of acting group elements: the letters of S, or a Schreier basis.
class GenSet {
 public:
  /// Throws BadGenSet on an empty list, the identity, or a repeated word.
  explicit GenSet(std::vector<Word> words);
  static GenSet letters(int rank);

  const std::vector<Word>& words() const noexcept { return words_; }
  int size() const noexcept { return static_cast<int>(words_.size()); }
  /// Rank of the ambient free group the words live in.
  int ambient_rank() const noexcept { return words_.front().rank(); }
  const Word& operator[](std::size_t i) const { return words_[i]; }

 private:
  std::vector<Word> words_;
};

/// Ball of radius n in the word metric of gens, as elements of the ambient group.
WordSet gen_ball(const GenSet& gens, int radius);

struct EntropyReport {
  double value = 0.0;
  double base_entropy = 0.0;
  /// H(w . beta v beta) per generator, in GenSet order.
  std::vector<double> terms;
  std::vector<std::string> term_labels;
  /// F over balls B(0), B(1), ... when produced by f_limit.
  std::vector<double> sequence;
  bool stabilized = false;

  /// value minus (1 - 2k) H(beta) - sum terms.
  double consistency_gap() const;
  /// (1 - k) H(beta) + sum (terms - H(beta)), the conditional form.
  double conditional_form() const;

  friend bool operator==(const EntropyReport&, const EntropyReport&) = default;
};

/// F(X, mu, gens, base . alpha) = (1 - 2k) H(beta) + sum_w H(w . beta v beta).
EntropyReport big_F(const Measure& mu, const GenSet& gens, const WordSet& base);

/// Closed form (1 - 2r) H(pi) + sum_s H(J_s).
double f_markov(const TreeMarkovMeasure& tm);

/// F over gens-balls B(0)..B(n_max). Throws InternalError if the sequence
/// increases. Finite actions stop once the ball partition stops refining.
EntropyReport f_limit(const Measure& mu, const GenSet& gens, int n_max);

/// H(alpha) + sum_s a_s H(s . alpha | alpha), a_s counting right s-edges of F.
/// Throws NotRightConnected.
double shannon_join_edge(const TreeMarkovMeasure& tm, const WordSet& F);

struct CountCheck {
  bool holds = false;
  long long lhs = 0;
  long long rhs = 0;
};

/// (1 - 2r)|K| + sum_s |sK u K| == 1. Throws NotLeftConnected.
CountCheck check_ball_identity(int rank, const WordSet& K);

struct DeltaInequality {
  double f = 0.0;
  double per_element = 0.0;  // H(Delta . alpha) / |Delta|
  double base = 0.0;         // H(alpha)
  bool holds = false;
};

/// f <= H(Delta . alpha) / |Delta| <= H(alpha) with 1e-9 slack.
/// Throws NotRightConnected.
DeltaInequality check_delta_inequality(const TreeMarkovMeasure& tm, const WordSet& delta);

}  // namespace finv
