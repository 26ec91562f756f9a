#include "finv/cayley.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "finv/error.hpp"

namespace finv {

std::int64_t EdgeVector::total() const noexcept { return std::accumulate(counts.begin(), counts.end(), std::int64_t{0}); }

EdgeVector& EdgeVector::operator+=(const EdgeVector& o) {
  if (counts.size() != o.counts.size()) throw Error(ErrorKind::RankMismatch, "edge vector ranks differ");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
  return *this;
}

EdgeVector& EdgeVector::operator-=(const EdgeVector& o) {
  if (counts.size() != o.counts.size()) throw Error(ErrorKind::RankMismatch, "edge vector ranks differ");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] -= o.counts[i];
  return *this;
}

EdgeVector operator*(std::int64_t k, EdgeVector a) {
  for (auto& c : a.counts) c *= k;
  return a;
}

std::string EdgeVector::str() const {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    const std::string letter = rank() <= 26 ? std::string(1, static_cast<char>('a' + i)) : "s" + std::to_string(i + 1);
    if (!out.empty()) out += counts[i] < 0 ? " - " : " + ";
    else if (counts[i] < 0) out += "-";
    out += std::to_string(counts[i] < 0 ? -counts[i] : counts[i]) + letter;
  }
  return out.empty() ? "0" : out;
}

EdgeVector all_generators(int rank) {
  EdgeVector v(rank);
  std::fill(v.counts.begin(), v.counts.end(), 1);
  return v;
}

std::vector<Word> ball_words(int rank, int radius) {
  std::vector<Word> out{Word::identity(rank)};
  if (radius < 0) return {};
  std::size_t layer_begin = 0;
  for (int n = 1; n <= radius; ++n) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (int key = 0; key < 2 * rank; ++key) {
        const Letter l = letter_from_key(key);
        const Word& w = out[i];
        if (!w.is_identity() && w.last() == -l) continue;
        out.push_back(mul(w, Word::generator(rank, l)));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

WordSet ball(int rank, int radius) {
  auto ws = ball_words(rank, radius);
  return WordSet(ws.begin(), ws.end());
}

bool on_geodesic(const Word& v, const Word& g, const Word& h) {
  return right_distance(g, v) + right_distance(v, h) == right_distance(g, h);
}

bool separates(const WordSet& V, const WordSet& U, const WordSet& W) {
  for (const auto& u : U) {
    for (const auto& w : W) {
      bool hit = false;
      for (const auto& v : V) {
        if (on_geodesic(v, u, w)) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
  }
  return true;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

WordSet inverted(const WordSet& F) {
  WordSet out;
  for (const auto& w : F) out.insert(w.inverse());
  return out;
}

}  // namespace

std::vector<WordSet> connected_components(const WordSet& F, Side side) {
  if (F.empty()) return {};
  const int rank = F.begin()->rank();
  std::vector<Word> elems(F.begin(), F.end());
  std::unordered_map<Word, int, WordHash> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], static_cast<int>(i));

  std::vector<int> parent(elems.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (int key = 0; key < 2 * rank; ++key) {
      const Word step = Word::generator(rank, letter_from_key(key));
      const Word nb = side == Side::Right ? mul(elems[i], step) : mul(step, elems[i]);
      auto it = index.find(nb);
      if (it == index.end()) continue;
      const int a = find_root(parent, static_cast<int>(i));
      const int b = find_root(parent, it->second);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  // Elements are visited in length-lex order, so roots appear in order of
  // each component's least element.
  std::vector<WordSet> out;
  std::unordered_map<int, std::size_t> slot;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const int r = find_root(parent, static_cast<int>(i));
    auto [it, fresh] = slot.emplace(r, out.size());
    if (fresh) out.emplace_back();
    out[it->second].insert(elems[i]);
  }
  return out;
}

bool is_connected(const WordSet& F, Side side) { return connected_components(F, side).size() == 1; }

bool is_bi_connected(const WordSet& F) { return is_connected(F, Side::Right) && is_connected(F, Side::Left); }

EdgeVector edge_vector(const WordSet& F) {
  if (F.empty()) return EdgeVector(0);
  const int rank = F.begin()->rank();
  EdgeVector v(rank);
  for (const auto& g : F) {
    for (int s = 1; s <= rank; ++s) {
      if (F.contains(mul(g, Word::generator(rank, s)))) ++v.counts[static_cast<std::size_t>(s - 1)];
    }
  }
  return v;
}

WordSet tree_hull(const WordSet& F, Side side) {
  if (F.empty()) return {};
  if (side == Side::Left) return inverted(tree_hull(inverted(F), Side::Right));
  // In a tree the union of geodesics from one fixed member to all others is
  // already the minimal subtree spanning F.
  const Word& root = *F.begin();
  WordSet hull{root};
  for (const auto& f : F) {
    const Word path = mul(root.inverse(), f);
    Word cur = root;
    for (Letter l : path.letters()) {
      cur = mul(cur, Word::generator(root.rank(), l));
      hull.insert(cur);
    }
  }
  return hull;
}

WordSet left_translate(const Word& g, const WordSet& F) {
  WordSet out;
  for (const auto& f : F) out.insert(mul(g, f));
  return out;
}

WordSet right_translate(const WordSet& F, const Word& g) {
  WordSet out;
  for (const auto& f : F) out.insert(mul(f, g));
  return out;
}

WordSet product(const WordSet& A, const WordSet& B) {
  WordSet out;
  for (const auto& a : A) {
    for (const auto& b : B) out.insert(mul(a, b));
  }
  return out;
}

WordSet set_union(const WordSet& A, const WordSet& B) {
  WordSet out = A;
  out.insert(B.begin(), B.end());
  return out;
}

std::string to_string(const WordSet& F) {
  std::string out = "{";
  bool first = true;
  for (const auto& w : F) {
    if (!first) out += ", ";
    out += w.str();
    first = false;
  }
  return out + "}";
}

}  // namespace finv
