#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "finv/cayley.hpp"
#include "finv/measure.hpp"
#include "finv/word.hpp"

namespace finv {

/// Largest hull (in vertices) the sum-product kernel accepts.
inline constexpr std::size_t kHullVertexCap = 10000;
/// Largest number of tuples materialized by a dense marginal.
inline constexpr std::uint64_t kDenseTupleCap = std::uint64_t{1} << 24;
/// Largest number of tuples a streaming entropy sum walks over.
inline constexpr std::uint64_t kStreamTupleCap = std::uint64_t{1} << 32;

/// Exact finite-dimensional marginals of a tree-Markov measure on a fixed
/// list of group elements. The tree hull of the domain is rooted at its
/// first element; unassigned hull vertices are summed out by leaf peeling.
class JointKernel {
 public:
  /// Working buffers for one evaluation; one per thread.
  struct Scratch {
    std::vector<double> scalar;
    std::vector<double> vec;
    std::vector<int> symbols;
  };

  /// Throws HullTooLarge when the hull exceeds kHullVertexCap.
  JointKernel(const TreeMarkovMeasure& tm, std::vector<Word> domain);

  const std::vector<Word>& domain() const noexcept { return domain_; }
  int alphabet_size() const noexcept { return m_; }
  std::size_t hull_size() const noexcept { return parent_.size(); }
  /// m^|domain|, or UINT64_MAX on overflow.
  std::uint64_t num_tuples() const noexcept { return tuples_; }

  Scratch make_scratch() const;

  /// mu(x(domain[i]) = symbols[i] for all i).
  double probability(std::span<const int> symbols, Scratch& scratch) const;
  double probability(std::span<const int> symbols) const;

  /// Mixed-radix decoding: domain[0] is the most significant digit.
  void decode(std::uint64_t index, std::span<int> symbols) const;

  /// Full tuple distribution, OpenMP-parallel over tuples.
  std::vector<double> dense() const;
  std::vector<double> dense_serial() const;

  /// Shannon entropy (nats) of the tuple distribution without storing it.
  double entropy() const;
  double entropy_serial() const;

 private:
  double evaluate(Scratch& scratch) const;
  const double* kernel_for(std::size_t v) const {
    return kernels_.data() + static_cast<std::size_t>(edge_key_[v]) * static_cast<std::size_t>(m_ * m_);
  }

  int m_;
  std::vector<Word> domain_;
  std::uint64_t tuples_ = 0;
  std::vector<double> pi_;
  /// kernels_[key(l) m^2 + a m + b] = P_l(a, b).
  std::vector<double> kernels_;
  /// Hull vertices in breadth-first order from the root (index 0).
  std::vector<int> parent_;
  std::vector<int> edge_key_;
  std::vector<int> slot_;
  std::vector<std::vector<int>> children_;
};

/// Tuple distribution of a measure on an ordered list of coordinates.
struct Marginal {
  std::vector<Word> domain;
  int alphabet_size = 0;
  std::vector<double> probs;

  std::size_t index_of(std::span<const int> symbols) const;
};

/// mu of the cylinder set {x : x(g) = asg(g)}.
double cylinder_prob(const TreeMarkovMeasure& tm, const CylinderAssignment& asg);

/// Marginal on F, tuples ordered by the length-lex order of F.
/// Throws HullTooLarge.
Marginal marginal(const TreeMarkovMeasure& tm, const WordSet& F);

/// H(F . alpha), streamed; throws HullTooLarge.
double joint_entropy(const TreeMarkovMeasure& tm, const WordSet& F);

}  // namespace finv
