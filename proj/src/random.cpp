#include "finv/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "finv/error.hpp"

namespace finv {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Permutation random_permutation(Rng& rng, int n) {
  Permutation p = identity_permutation(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Scales a positive matrix until both marginals equal pi, then divides by pi.
Eigen::MatrixXd sinkhorn_kernel(Rng& rng, const Eigen::VectorXd& pi) {
  const Eigen::Index m = pi.size();
  Eigen::MatrixXd J(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) J(a, b) = uniform(rng, 0.05, 1.0);
  }
  for (int it = 0; it < 10000; ++it) {
    for (Eigen::Index a = 0; a < m; ++a) J.row(a) *= pi(a) / J.row(a).sum();
    for (Eigen::Index b = 0; b < m; ++b) J.col(b) *= pi(b) / J.col(b).sum();
    const double err = (J.rowwise().sum() - pi).cwiseAbs().maxCoeff();
    if (err < 1e-15) break;
  }
  Eigen::MatrixXd P(m, m);
  for (Eigen::Index a = 0; a < m; ++a) P.row(a) = J.row(a) / J.row(a).sum();
  return P;
}

Eigen::MatrixXd permutation_matrix(Rng& rng, int m) {
  const Permutation p = random_permutation(rng, m);
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, m);
  for (int a = 0; a < m; ++a) P(a, p[static_cast<std::size_t>(a)]) = 1.0;
  return P;
}

bool transitive(const std::vector<Permutation>& perms, int n) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    for (const auto& p : perms) {
      const int d = p[static_cast<std::size_t>(c)];
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = true;
        ++count;
        stack.push_back(d);
      }
    }
  }
  return count == n;
}

}  // namespace

Eigen::VectorXd random_distribution(Rng& rng, int m) {
  Eigen::VectorXd v(m);
  for (int a = 0; a < m; ++a) v(a) = uniform(rng, 0.1, 1.0);
  return v / v.sum();
}

TreeMarkovMeasure random_markov(Rng& rng, int rank, int m) {
  for (;;) {
    const bool uniform_pi = uniform_int(rng, 0, 5) == 0;
    const Eigen::VectorXd pi = uniform_pi ? Eigen::VectorXd::Constant(m, 1.0 / m) : random_distribution(rng, m);
    std::vector<Eigen::MatrixXd> trans;
    for (int s = 0; s < rank; ++s) {
      trans.push_back(uniform_pi && uniform_int(rng, 0, 2) == 0 ? permutation_matrix(rng, m) : sinkhorn_kernel(rng, pi));
    }
    try {
      return TreeMarkovMeasure(pi, std::move(trans));
    } catch (const Error&) {
      // Sinkhorn did not reach the stationarity tolerance; draw again.
    }
  }
}

FiniteAction random_finite_action(Rng& rng, int rank, int n) {
  std::vector<Permutation> perms;
  for (int s = 0; s < rank; ++s) perms.push_back(random_permutation(rng, n));

  std::vector<int> orbit(static_cast<std::size_t>(n), -1);
  std::vector<double> weight;
  for (int x = 0; x < n; ++x) {
    if (orbit[static_cast<std::size_t>(x)] >= 0) continue;
    const int id = static_cast<int>(weight.size());
    weight.push_back(uniform(rng, 0.5, 1.5));
    std::vector<int> stack{x};
    orbit[static_cast<std::size_t>(x)] = id;
    while (!stack.empty()) {
      const int y = stack.back();
      stack.pop_back();
      for (const auto& p : perms) {
        const int z = p[static_cast<std::size_t>(y)];
        if (orbit[static_cast<std::size_t>(z)] < 0) {
          orbit[static_cast<std::size_t>(z)] = id;
          stack.push_back(z);
        }
      }
    }
  }
  std::vector<double> mu(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int x = 0; x < n; ++x) total += weight[static_cast<std::size_t>(orbit[static_cast<std::size_t>(x)])];
  for (int x = 0; x < n; ++x) mu[static_cast<std::size_t>(x)] = weight[static_cast<std::size_t>(orbit[static_cast<std::size_t>(x)])] / total;

  const int cells = uniform_int(rng, 1, n);
  std::vector<int> alpha(static_cast<std::size_t>(n));
  for (auto& a : alpha) a = uniform_int(rng, 0, cells - 1);
  return FiniteAction(std::move(perms), std::move(mu), std::move(alpha));
}

CosetAction random_coset_action(Rng& rng, int rank, int index) {
  if (index < 1) throw Error(ErrorKind::ConfigError, "index must be positive");
  for (;;) {
    std::vector<Permutation> perms;
    for (int s = 0; s < rank; ++s) perms.push_back(random_permutation(rng, index));
    if (transitive(perms, index)) return CosetAction(rank, std::move(perms));
  }
}

Word random_word(Rng& rng, int rank, int length) {
  std::vector<Letter> ls;
  while (static_cast<int>(ls.size()) < length) {
    const Letter l = letter_from_key(uniform_int(rng, 0, 2 * rank - 1));
    if (!ls.empty() && ls.back() == -l) continue;
    ls.push_back(l);
  }
  return Word(rank, ls);
}

namespace {

/// Caps growth at the size of the ball the words may live in.
int reachable_size(int rank, int size, int max_length) {
  if (max_length < 0) return size;
  long long ball = 1;
  long long layer = 2LL * rank;
  for (int n = 1; n <= max_length && ball < size; ++n) {
    ball += layer;
    layer *= 2LL * rank - 1;
  }
  return static_cast<int>(std::min<long long>(size, ball));
}

}  // namespace

WordSet random_connected_set(Rng& rng, int rank, int size, Side side, int max_length) {
  size = reachable_size(rank, size, max_length);
  std::vector<Word> elems{Word::identity(rank)};
  WordSet set{elems.front()};
  while (static_cast<int>(set.size()) < size) {
    const Word& g = elems[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(elems.size()) - 1))];
    const Word step = Word::generator(rank, letter_from_key(uniform_int(rng, 0, 2 * rank - 1)));
    Word c = side == Side::Right ? mul(g, step) : mul(step, g);
    if (max_length >= 0 && static_cast<int>(c.length()) > max_length) continue;
    if (set.insert(c).second) elems.push_back(std::move(c));
  }
  return set;
}

WordSet random_bi_connected_set(Rng& rng, int rank, int size, int max_length) {
  size = reachable_size(rank, size, max_length);
  std::vector<Word> elems{Word::identity(rank)};
  WordSet set{elems.front()};
  while (static_cast<int>(set.size()) < size) {
    const Word& g = elems[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(elems.size()) - 1))];
    const Word step = Word::generator(rank, letter_from_key(uniform_int(rng, 0, 2 * rank - 1)));
    Word c = uniform_int(rng, 0, 1) == 0 ? mul(g, step) : mul(step, g);
    if (c.is_identity() || set.contains(c)) continue;
    if (max_length >= 0 && static_cast<int>(c.length()) > max_length) continue;
    const Word drop_last = mul(c, Word::generator(rank, -c.last()));
    const Word drop_first = mul(Word::generator(rank, -c.first()), c);
    if (!set.contains(drop_last) || !set.contains(drop_first)) continue;
    set.insert(c);
    elems.push_back(std::move(c));
  }
  return set;
}

}  // namespace finv
