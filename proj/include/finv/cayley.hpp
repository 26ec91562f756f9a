#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "finv/word.hpp"

namespace finv {

/// Finite set of words, enumerated in length-lex order. This order is the
/// canonical enumeration order wherever a set indexes a tuple.
using WordSet = std::set<Word>;

enum class Side { Right, Left };

/// Formal sum sum_s a_s * s over the free generators; counts[s-1] = a_s.
/// Entries may go negative when differences of edge vectors are taken.
struct EdgeVector {
  std::vector<std::int64_t> counts;

  explicit EdgeVector(int rank = 0) : counts(static_cast<std::size_t>(rank), 0) {}

  int rank() const noexcept { return static_cast<int>(counts.size()); }
  std::int64_t total() const noexcept;

  EdgeVector& operator+=(const EdgeVector& o);
  EdgeVector& operator-=(const EdgeVector& o);
  friend EdgeVector operator+(EdgeVector a, const EdgeVector& b) { return a += b; }
  friend EdgeVector operator-(EdgeVector a, const EdgeVector& b) { return a -= b; }
  friend EdgeVector operator*(std::int64_t k, EdgeVector a);
  friend bool operator==(const EdgeVector&, const EdgeVector&) = default;

  /// e.g. "4a + 2b", "0" for the zero vector.
  std::string str() const;
};

/// sum_{s in S} s: the vector with every coefficient 1.
EdgeVector all_generators(int rank);

/// All reduced words of length <= radius, in length-lex order.
std::vector<Word> ball_words(int rank, int radius);
WordSet ball(int rank, int radius);

/// True iff v lies on the right geodesic from g to h.
bool on_geodesic(const Word& v, const Word& g, const Word& h);

/// True iff every right path from U to W passes through V.
bool separates(const WordSet& V, const WordSet& U, const WordSet& W);

/// Maximal connected pieces of F under right (g ~ g s) or left (g ~ s g)
/// adjacency. Components are listed in order of their least element.
std::vector<WordSet> connected_components(const WordSet& F, Side side);

bool is_connected(const WordSet& F, Side side);
bool is_bi_connected(const WordSet& F);

/// Number of pairs (g, g s) inside F, per generator s.
EdgeVector edge_vector(const WordSet& F);

/// Union of all geodesics between members of F on the given side.
WordSet tree_hull(const WordSet& F, Side side);

/// Left multiplication g * F and right multiplication F * g.
WordSet left_translate(const Word& g, const WordSet& F);
WordSet right_translate(const WordSet& F, const Word& g);
/// {a b : a in A, b in B}
WordSet product(const WordSet& A, const WordSet& B);
WordSet set_union(const WordSet& A, const WordSet& B);

std::string to_string(const WordSet& F);

}  // namespace finv
