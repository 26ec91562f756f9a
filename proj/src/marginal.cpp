#include "finv/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "finv/error.hpp"

namespace finv {

namespace {

double neg_plogp(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

std::uint64_t checked_power(int base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(base)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= static_cast<std::uint64_t>(base);
  }
  return out;
}

}  // namespace

JointKernel::JointKernel(const TreeMarkovMeasure& tm, std::vector<Word> domain)
    : m_(tm.alphabet_size()), domain_(std::move(domain)) {
  if (domain_.empty()) throw Error(ErrorKind::InternalError, "empty marginal domain");
  const int rank = tm.rank();
  for (const auto& w : domain_) {
    if (w.rank() != rank) throw Error(ErrorKind::RankMismatch, "word rank differs from measure rank");
  }
  tuples_ = checked_power(m_, domain_.size());

  const WordSet hull = tree_hull(WordSet(domain_.begin(), domain_.end()), Side::Right);
  if (hull.size() > kHullVertexCap) {
    throw Error(ErrorKind::HullTooLarge, "hull has " + std::to_string(hull.size()) + " vertices");
  }

  pi_.assign(tm.pi().data(), tm.pi().data() + m_);
  const auto mm = static_cast<std::size_t>(m_ * m_);
  kernels_.resize(static_cast<std::size_t>(2 * rank) * mm);
  for (int key = 0; key < 2 * rank; ++key) {
    const auto& K = tm.kernel(letter_from_key(key));
    for (int a = 0; a < m_; ++a) {
      for (int b = 0; b < m_; ++b) kernels_[static_cast<std::size_t>(key) * mm + static_cast<std::size_t>(a * m_ + b)] = K(a, b);
    }
  }

  std::unordered_map<Word, int, WordHash> id;
  std::vector<Word> verts{domain_.front()};
  id.emplace(domain_.front(), 0);
  parent_.push_back(-1);
  edge_key_.push_back(-1);
  children_.emplace_back();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (int key = 0; key < 2 * rank; ++key) {
      Word nb = mul(verts[i], Word::generator(rank, letter_from_key(key)));
      if (!hull.contains(nb) || id.contains(nb)) continue;
      const int v = static_cast<int>(verts.size());
      id.emplace(nb, v);
      verts.push_back(std::move(nb));
      parent_.push_back(static_cast<int>(i));
      edge_key_.push_back(key);
      children_.emplace_back();
      children_[i].push_back(v);
    }
  }
  if (verts.size() != hull.size()) throw Error(ErrorKind::InternalError, "hull is not right connected");

  slot_.assign(verts.size(), -1);
  for (std::size_t j = 0; j < domain_.size(); ++j) {
    auto& s = slot_[static_cast<std::size_t>(id.at(domain_[j]))];
    if (s >= 0) throw Error(ErrorKind::InternalError, "duplicate word in marginal domain");
    s = static_cast<int>(j);
  }
}

JointKernel::Scratch JointKernel::make_scratch() const {
  Scratch s;
  s.scalar.resize(parent_.size());
  s.vec.resize(parent_.size() * static_cast<std::size_t>(m_));
  s.symbols.resize(domain_.size());
  return s;
}

double JointKernel::probability(std::span<const int> symbols, Scratch& scratch) const {
  if (symbols.size() != domain_.size()) throw Error(ErrorKind::InternalError, "tuple length differs from domain size");
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] < 0 || symbols[i] >= m_) throw Error(ErrorKind::InternalError, "symbol out of range");
    scratch.symbols[i] = symbols[i];
  }
  return evaluate(scratch);
}

double JointKernel::probability(std::span<const int> symbols) const {
  Scratch s = make_scratch();
  return probability(symbols, s);
}

void JointKernel::decode(std::uint64_t index, std::span<int> symbols) const {
  const auto m = static_cast<std::uint64_t>(m_);
  for (std::size_t i = symbols.size(); i-- > 0;) {
    symbols[i] = static_cast<int>(index % m);
    index /= m;
  }
}

// Children are peeled before parents. A vertex whose parent is assigned
// sends a scalar; otherwise it sends a vector indexed by the parent's symbol.
double JointKernel::evaluate(Scratch& sc) const {
  const std::size_t m = static_cast<std::size_t>(m_);
  for (std::size_t v = parent_.size(); v-- > 1;) {
    const auto p = static_cast<std::size_t>(parent_[v]);
    const double* K = kernel_for(v);
    const int vs = slot_[v];
    const bool v_fixed = vs >= 0;
    const int av = v_fixed ? sc.symbols[static_cast<std::size_t>(vs)] : -1;

    // Product of child messages at symbol x of v (children all see v's state).
    auto child_product = [&](std::size_t x) {
      double prod = 1.0;
      for (int c : children_[v]) {
        prod *= v_fixed ? sc.scalar[static_cast<std::size_t>(c)] : sc.vec[static_cast<std::size_t>(c) * m + x];
      }
      return prod;
    };

    if (slot_[p] >= 0) {
      const auto ap = static_cast<std::size_t>(sc.symbols[static_cast<std::size_t>(slot_[p])]);
      double val = 0.0;
      if (v_fixed) {
        val = K[ap * m + static_cast<std::size_t>(av)] * child_product(0);
      } else {
        for (std::size_t x = 0; x < m; ++x) val += K[ap * m + x] * child_product(x);
      }
      sc.scalar[v] = val;
    } else {
      double* out = sc.vec.data() + v * m;
      if (v_fixed) {
        const double cp = child_product(0);
        for (std::size_t y = 0; y < m; ++y) out[y] = K[y * m + static_cast<std::size_t>(av)] * cp;
      } else {
        for (std::size_t y = 0; y < m; ++y) out[y] = 0.0;
        for (std::size_t x = 0; x < m; ++x) {
          const double cp = child_product(x);
          if (cp == 0.0) continue;
          for (std::size_t y = 0; y < m; ++y) out[y] += K[y * m + x] * cp;
        }
      }
    }
  }
  // The root is domain[0], always assigned.
  const auto a0 = static_cast<std::size_t>(sc.symbols[0]);
  double prob = pi_[a0];
  for (int c : children_[0]) prob *= sc.scalar[static_cast<std::size_t>(c)];
  return prob;
}

std::vector<double> JointKernel::dense_serial() const {
  if (tuples_ > kDenseTupleCap) throw Error(ErrorKind::HullTooLarge, "marginal has too many tuples to materialize");
  std::vector<double> out(static_cast<std::size_t>(tuples_));
  Scratch sc = make_scratch();
  for (std::uint64_t i = 0; i < tuples_; ++i) {
    decode(i, sc.symbols);
    out[static_cast<std::size_t>(i)] = evaluate(sc);
  }
  return out;
}

std::vector<double> JointKernel::dense() const {
  if (tuples_ > kDenseTupleCap) throw Error(ErrorKind::HullTooLarge, "marginal has too many tuples to materialize");
  std::vector<double> out(static_cast<std::size_t>(tuples_));
  const auto n = static_cast<std::int64_t>(tuples_);
#pragma omp parallel
  {
    Scratch sc = make_scratch();
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      decode(static_cast<std::uint64_t>(i), sc.symbols);
      out[static_cast<std::size_t>(i)] = evaluate(sc);
    }
  }
  return out;
}

namespace {

/// Tuples per block; block sums are combined with compensated addition.
constexpr std::int64_t kBlock = 4096;

struct Compensated {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

double JointKernel::entropy_serial() const {
  if (tuples_ > kStreamTupleCap) throw Error(ErrorKind::HullTooLarge, "marginal has too many tuples to enumerate");
  Scratch sc = make_scratch();
  Compensated h;
  for (std::uint64_t start = 0; start < tuples_; start += kBlock) {
    const std::uint64_t end = std::min<std::uint64_t>(tuples_, start + kBlock);
    double block = 0.0;
    for (std::uint64_t i = start; i < end; ++i) {
      decode(i, sc.symbols);
      block += neg_plogp(evaluate(sc));
    }
    h.add(block);
  }
  return h.sum;
}

double JointKernel::entropy() const {
  if (tuples_ > kStreamTupleCap) throw Error(ErrorKind::HullTooLarge, "marginal has too many tuples to enumerate");
  const auto n = static_cast<std::int64_t>(tuples_);
  const std::int64_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> block_sums(static_cast<std::size_t>(blocks));
#pragma omp parallel
  {
    Scratch sc = make_scratch();
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::int64_t end = std::min(n, (b + 1) * kBlock);
      double block = 0.0;
      for (std::int64_t i = b * kBlock; i < end; ++i) {
        decode(static_cast<std::uint64_t>(i), sc.symbols);
        block += neg_plogp(evaluate(sc));
      }
      block_sums[static_cast<std::size_t>(b)] = block;
    }
  }
  // Fixed combination order keeps the result independent of the thread count.
  Compensated h;
  for (double b : block_sums) h.add(b);
  return h.sum;
}

std::size_t Marginal::index_of(std::span<const int> symbols) const {
  std::size_t idx = 0;
  for (int s : symbols) idx = idx * static_cast<std::size_t>(alphabet_size) + static_cast<std::size_t>(s);
  return idx;
}

double cylinder_prob(const TreeMarkovMeasure& tm, const CylinderAssignment& asg) {
  if (asg.empty()) return 1.0;
  std::vector<Word> dom;
  std::vector<int> syms;
  for (const auto& [w, k] : asg) {
    if (k < 0 || k >= tm.alphabet_size()) throw Error(ErrorKind::InternalError, "symbol out of range");
    dom.push_back(w);
    syms.push_back(k);
  }
  return JointKernel(tm, std::move(dom)).probability(syms);
}

Marginal marginal(const TreeMarkovMeasure& tm, const WordSet& F) {
  JointKernel k(tm, std::vector<Word>(F.begin(), F.end()));
  return Marginal{k.domain(), tm.alphabet_size(), k.dense()};
}

double joint_entropy(const TreeMarkovMeasure& tm, const WordSet& F) {
  return JointKernel(tm, std::vector<Word>(F.begin(), F.end())).entropy();
}

}  // namespace finv
