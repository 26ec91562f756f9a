#include "finv/subgroup.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <map>

#include "finv/error.hpp"

namespace finv {

Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

Permutation inverse_permutation(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return inv;
}

bool is_bijection(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

Permutation parse_cycles(std::string_view text, int n) {
  Permutation p = identity_permutation(n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::NonBijective, "cycle notation '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') fail("expected '('");
    const std::size_t close = text.find(')', i);
    if (close == std::string_view::npos) fail("unterminated cycle");
    const std::string_view body = text.substr(i + 1, close - i - 1);
    std::vector<int> cycle;
    const bool separated = body.find_first_of(" ,") != std::string_view::npos;
    if (separated) {
      std::size_t j = 0;
      while (j < body.size()) {
        if (body[j] == ' ' || body[j] == ',') {
          ++j;
          continue;
        }
        std::size_t k = j;
        while (k < body.size() && std::isdigit(static_cast<unsigned char>(body[k]))) ++k;
        if (k == j) fail("non-digit in cycle");
        cycle.push_back(std::atoi(std::string(body.substr(j, k - j)).c_str()));
        j = k;
      }
    } else {
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("non-digit in cycle");
        cycle.push_back(c - '0');
      }
    }
    for (int x : cycle) {
      if (x < 0 || x >= n) fail("point " + std::to_string(x) + " out of range");
      if (used[static_cast<std::size_t>(x)]) fail("point " + std::to_string(x) + " repeated");
      used[static_cast<std::size_t>(x)] = true;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      p[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    }
    i = close + 1;
  }
  return p;
}

std::string format_cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

CosetAction::CosetAction(int rank, std::vector<Permutation> perms) : rank_(rank), perms_(std::move(perms)) {
  if (rank < 1 || static_cast<int>(perms_.size()) != rank) {
    throw Error(ErrorKind::RankMismatch, "coset action needs one permutation per generator");
  }
  index_ = static_cast<int>(perms_.front().size());
  if (index_ < 1) throw Error(ErrorKind::NonBijective, "empty coset set");
  for (const auto& p : perms_) {
    if (static_cast<int>(p.size()) != index_ || !is_bijection(p)) {
      throw Error(ErrorKind::NonBijective, "generator permutation is not a bijection of {0.." +
                                               std::to_string(index_ - 1) + "}");
    }
    inverse_perms_.push_back(inverse_permutation(p));
  }
  std::vector<bool> seen(static_cast<std::size_t>(index_), false);
  std::deque<int> queue{0};
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int key = 0; key < 2 * rank_; ++key) {
      const int nc = step(c, letter_from_key(key));
      if (!seen[static_cast<std::size_t>(nc)]) {
        seen[static_cast<std::size_t>(nc)] = true;
        ++reached;
        queue.push_back(nc);
      }
    }
  }
  if (reached != index_) throw Error(ErrorKind::NotTransitive, "generators do not act transitively");
}

int CosetAction::step(int c, Letter l) const {
  const auto s = static_cast<std::size_t>(std::abs(l) - 1);
  return l > 0 ? perms_[s][static_cast<std::size_t>(c)] : inverse_perms_[s][static_cast<std::size_t>(c)];
}

int CosetAction::walk(int start, const Word& w) const {
  if (w.rank() != rank_) throw Error(ErrorKind::RankMismatch, "word rank differs from coset action rank");
  int c = start;
  for (Letter l : w.letters()) c = step(c, l);
  return c;
}

TransversalData schreier_transversal(const CosetAction& act) {
  const int n = act.index();
  const int r = act.rank();
  TransversalData td;
  td.rank = r;
  td.delta.assign(static_cast<std::size_t>(n), Word::identity(r));
  std::vector<bool> found(static_cast<std::size_t>(n), false);
  std::vector<int> order;  // cosets in length-lex order of their representatives
  std::deque<int> queue{0};
  found[0] = true;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    order.push_back(c);
    const Word& w = td.delta[static_cast<std::size_t>(c)];
    for (int key = 0; key < 2 * r; ++key) {
      const Letter l = letter_from_key(key);
      if (!w.is_identity() && w.last() == -l) continue;
      const int nc = act.step(c, l);
      if (found[static_cast<std::size_t>(nc)]) continue;
      found[static_cast<std::size_t>(nc)] = true;
      td.delta[static_cast<std::size_t>(nc)] = mul(w, Word::generator(r, l));
      queue.push_back(nc);
    }
  }

  td.external.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(r), -1));
  for (int c : order) {
    for (int s = 1; s <= r; ++s) {
      const Word ds = mul(td.delta[static_cast<std::size_t>(c)], Word::generator(r, s));
      const int nc = act.step(c, s);
      const Word& rep = td.delta[static_cast<std::size_t>(nc)];
      if (ds == rep) continue;
      td.external[static_cast<std::size_t>(c)][static_cast<std::size_t>(s - 1)] = static_cast<int>(td.gens.size());
      td.gens.push_back(mul(ds, rep.inverse()));
      td.witnesses.emplace_back(c, s);
    }
  }
  return td;
}

bool is_normal(const CosetAction& act) {
  const TransversalData td = schreier_transversal(act);
  const int r = act.rank();
  for (const auto& t : td.gens) {
    for (int key = 0; key < 2 * r; ++key) {
      const Word l = Word::generator(r, letter_from_key(key));
      if (act.coset_of(mul(mul(l, t), l.inverse())) != 0) return false;
    }
  }
  return true;
}

TransversalData bi_transversal(const CosetAction& act) {
  if (!is_normal(act)) throw Error(ErrorKind::NotNormal, "bi-connected transversal needs a normal subgroup");
  TransversalData td = schreier_transversal(act);
  if (!is_bi_connected(td.delta_set())) {
    throw Error(ErrorKind::InternalError, "least-word transversal of a normal subgroup is not bi-connected");
  }
  td.connectivity = Connectivity::Bi;
  return td;
}

CosetAction normal_core(const CosetAction& act, std::size_t bound) {
  const int r = act.rank();
  const auto& gens = act.perms();
  // Image elements are recorded as the permutation i -> i.g of the cosets.
  std::vector<Permutation> elems{identity_permutation(act.index())};
  std::map<Permutation, int> id{{elems.front(), 0}};
  std::vector<std::vector<int>> table;  // table[j][s] = index of elems[j] . s
  for (std::size_t j = 0; j < elems.size(); ++j) {
    table.emplace_back(static_cast<std::size_t>(r));
    for (int s = 0; s < r; ++s) {
      Permutation next(elems[j].size());
      for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] = gens[static_cast<std::size_t>(s)][static_cast<std::size_t>(elems[j][i])];
      }
      auto [it, fresh] = id.emplace(next, static_cast<int>(elems.size()));
      if (fresh) {
        if (elems.size() + 1 > bound) {
          throw Error(ErrorKind::ImageTooLarge, "permutation image exceeds " + std::to_string(bound) + " elements");
        }
        elems.push_back(std::move(next));
      }
      table[j][static_cast<std::size_t>(s)] = it->second;
    }
  }
  std::vector<Permutation> perms(static_cast<std::size_t>(r), Permutation(elems.size()));
  for (std::size_t j = 0; j < elems.size(); ++j) {
    for (int s = 0; s < r; ++s) perms[static_cast<std::size_t>(s)][j] = table[j][static_cast<std::size_t>(s)];
  }
  return CosetAction(r, std::move(perms));
}

TWord rewrite_in_T(const TransversalData& td, const CosetAction& act, const Word& h) {
  if (act.coset_of(h) != 0) throw Error(ErrorKind::NotInSubgroup, h.str() + " is not in the subgroup");
  TWord out;
  auto push = [&out](int x) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  };
  int c = 0;
  for (Letter l : h.letters()) {
    if (l > 0) {
      const int k = td.external[static_cast<std::size_t>(c)][static_cast<std::size_t>(l - 1)];
      if (k >= 0) push(k + 1);
      c = act.step(c, l);
    } else {
      const int prev = act.step(c, l);
      const int k = td.external[static_cast<std::size_t>(prev)][static_cast<std::size_t>(-l - 1)];
      if (k >= 0) push(-(k + 1));
      c = prev;
    }
  }
  return out;
}

Word evaluate_T(const TransversalData& td, const TWord& tw) {
  Word out = Word::identity(td.rank);
  for (int x : tw) {
    const Word& t = td.gens.at(static_cast<std::size_t>(std::abs(x) - 1));
    out = mul(out, x > 0 ? t : t.inverse());
  }
  return out;
}

int subgroup_rank(int index, int rank) { return index * (rank - 1) + 1; }

IdentityCheck check_subedge_identity(const TransversalData& td, const CosetAction& act) {
  const int r = act.rank();
  const WordSet D = td.delta_set();
  const EdgeVector RD = edge_vector(D);
  IdentityCheck out{false, EdgeVector(r), EdgeVector(r)};
  for (const auto& t : td.gens) out.lhs += edge_vector(set_union(left_translate(t, D), D)) - RD;
  out.rhs = static_cast<std::int64_t>(td.gens.size()) * RD;
  for (int s = 1; s <= r; ++s) {
    out.rhs += edge_vector(set_union(right_translate(D, Word::generator(r, s)), D)) - RD;
  }
  out.holds = out.lhs == out.rhs;
  return out;
}

CombCheck check_comb_identity(const WordSet& delta) {
  if (delta.empty()) throw Error(ErrorKind::MissingIdentity, "empty set");
  const int r = delta.begin()->rank();
  if (!delta.contains(Word::identity(r))) throw Error(ErrorKind::MissingIdentity, "set must contain the identity");
  if (!is_bi_connected(delta)) throw Error(ErrorKind::NotBiConnected, to_string(delta));

  const auto size = static_cast<std::int64_t>(delta.size());
  const EdgeVector RD = edge_vector(delta);
  const EdgeVector sum_s = all_generators(r);
  EdgeVector right_growth(r);  // sum_s R(D s u D) - R(D)
  EdgeVector left_growth(r);   // sum_s R(s D u D) - R(D)
  for (int s = 1; s <= r; ++s) {
    const Word g = Word::generator(r, s);
    right_growth += edge_vector(set_union(right_translate(delta, g), delta)) - RD;
    left_growth += edge_vector(set_union(left_translate(g, delta), delta)) - RD;
  }
  CombCheck out;
  out.right_boundary = {false, size * sum_s, right_growth + RD};
  out.left_growth_rule = {false, left_growth, sum_s + static_cast<std::int64_t>(r - 1) * RD};
  out.main = {false, size * left_growth, right_growth + (size * (r - 1) + 1) * RD};
  for (auto* c : {&out.main, &out.right_boundary, &out.left_growth_rule}) c->holds = c->lhs == c->rhs;
  return out;
}

Rational kps_scaling(const std::vector<long long>& edge_orders, const std::vector<long long>& vertex_orders) {
  Rational chi(0);
  for (long long e : edge_orders) {
    if (e <= 0) throw Error(ErrorKind::ConfigError, "edge group orders must be positive");
    chi += Rational(1, e);
  }
  for (long long v : vertex_orders) {
    if (v <= 0) throw Error(ErrorKind::ConfigError, "vertex group orders must be positive");
    chi -= Rational(1, v);
  }
  return chi;
}

}  // namespace finv
