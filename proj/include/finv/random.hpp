#pragma once

#include <cstdint>
#include <random>

#include "finv/cayley.hpp"
#include "finv/measure.hpp"
#include "finv/subgroup.hpp"

namespace finv {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Random stationary tree-Markov measure on m symbols. Joints are Sinkhorn
/// scaled to have both marginals equal to a random pi; occasionally pi is
/// uniform and some kernels are permutation matrices.
TreeMarkovMeasure random_markov(Rng& rng, int rank, int m);

/// Strictly positive random probability vector.
Eigen::VectorXd random_distribution(Rng& rng, int m);

/// Random permutations on n points, mu constant and positive on orbits,
/// alpha a random labeling with at most n cells.
FiniteAction random_finite_action(Rng& rng, int rank, int n);

/// Random transitive action on `index` cosets (rejection sampling).
CosetAction random_coset_action(Rng& rng, int rank, int index);

/// Random connected set containing the identity, grown one neighbour at a
/// time. Words longer than max_length (when non-negative) are never added, so
/// the result may be smaller than `size` when the ball is exhausted.
WordSet random_connected_set(Rng& rng, int rank, int size, Side side, int max_length = -1);

/// Random bi-connected set containing the identity.
WordSet random_bi_connected_set(Rng& rng, int rank, int size, int max_length = -1);

/// Uniformly random reduced word of length exactly n.
Word random_word(Rng& rng, int rank, int length);

}  // namespace finv
