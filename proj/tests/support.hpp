#pragma once

#include <cmath>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "finv/cayley.hpp"
#include "finv/error.hpp"
#include "finv/measure.hpp"
#include "finv/word.hpp"

namespace finv {

/// Readable gtest output for words.
inline void PrintTo(const Word& w, std::ostream* os) { *os << w.str(); }

}  // namespace finv

namespace finv::testing {

inline Word W(int rank, const std::string& s) { return Word::parse(rank, s); }

inline WordSet S(int rank, std::initializer_list<const char*> words) {
  WordSet out;
  for (const char* w : words) out.insert(Word::parse(rank, w));
  return out;
}

/// h(p) = -p ln p - (1-p) ln(1-p).
inline double h2(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

/// pi = uniform on 2 symbols, every P_s = [[1-p, p], [p, 1-p]].
inline TreeMarkovMeasure symmetric_chain(double p, int rank = 2) {
  Eigen::MatrixXd P(2, 2);
  P << 1 - p, p, p, 1 - p;
  return TreeMarkovMeasure(Eigen::Vector2d(0.5, 0.5), std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(rank), P));
}

inline Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

/// Brute-force marginal oracle: enumerate every symbol assignment on the
/// hull of F and weight it by prod_{edges (g, gs)} J_s(x_g, x_gs) divided by
/// prod_v pi(x_v)^(deg v - 1), the unrooted form of a tree Markov law.
/// Tuples are ordered by F's length-lex order, first element most significant.
inline std::vector<double> brute_force_marginal(const TreeMarkovMeasure& tm, const WordSet& F) {
  const int rank = tm.rank();
  const int m = tm.alphabet_size();
  // Hull: every prefix-path between members, built from scratch.
  WordSet hull;
  for (const auto& f : F) {
    for (const auto& g : F) {
      const Word step = f.inverse() * g;
      Word cur = f;
      hull.insert(cur);
      for (Letter l : step.letters()) {
        cur = cur * Word::generator(rank, l);
        hull.insert(cur);
      }
    }
  }
  const std::vector<Word> verts(hull.begin(), hull.end());
  const std::size_t n = verts.size();
  struct Edge {
    std::size_t from, to;
    int s;
  };
  std::vector<Edge> edges;
  std::vector<int> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int s = 1; s <= rank; ++s) {
      const Word nb = verts[i] * Word::generator(rank, s);
      for (std::size_t j = 0; j < n; ++j) {
        if (verts[j] == nb) {
          edges.push_back({i, j, s});
          ++degree[i];
          ++degree[j];
        }
      }
    }
  }
  std::vector<std::size_t> pos;
  for (const auto& f : F) {
    for (std::size_t j = 0; j < n; ++j) {
      if (verts[j] == f) pos.push_back(j);
    }
  }
  std::size_t tuples = 1;
  for (std::size_t i = 0; i < F.size(); ++i) tuples *= static_cast<std::size_t>(m);
  std::vector<double> out(tuples, 0.0);
  std::vector<int> x(n, 0);
  for (;;) {
    double p = 1.0;
    for (const auto& e : edges) p *= tm.pi()(x[e.from]) * tm.forward(e.s)(x[e.from], x[e.to]);
    for (std::size_t v = 0; v < n; ++v) p /= std::pow(tm.pi()(x[v]), degree[v] - 1);
    std::size_t idx = 0;
    for (std::size_t j : pos) idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(x[j]);
    out[idx] += p;
    std::size_t k = 0;
    while (k < n && ++x[k] == m) x[k++] = 0;
    if (k == n) break;
  }
  return out;
}

/// Kind of the Error thrown by f; InternalError stands in for "nothing thrown".
inline ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalError;
}

inline double entropy_of(const std::vector<double>& p) {
  double h = 0.0;
  for (double q : p) {
    if (q > 0) h -= q * std::log(q);
  }
  return h;
}

}  // namespace finv::testing
