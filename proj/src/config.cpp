#include "finv/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "finv/error.hpp"
#include "finv/verify.hpp"

namespace finv {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorKind::ConfigError, "line " + std::to_string(line) + ": " + msg);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<ConfigBlock> blocks() {
    std::vector<ConfigBlock> out;
    skip();
    while (!at_end()) {
      ConfigBlock b;
      b.line = line_;
      b.name = identifier("block name");
      expect('{');
      skip();
      std::set<std::string> keys;
      while (peek() != '}') {
        if (at_end()) fail(b.line, "unterminated block '" + b.name + "'");
        const int key_line = line_;
        std::string key = identifier("key");
        while (peek() == '.') {
          ++pos_;
          key += "." + identifier("key part");
        }
        if (!keys.insert(key).second) fail(key_line, "duplicate key '" + key + "'");
        expect('=');
        skip();
        b.entries.emplace_back(std::move(key), value());
        skip();
        if (peek() == ',') {
          ++pos_;
          skip();
        }
      }
      ++pos_;
      out.push_back(std::move(b));
      skip();
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip() {
    while (!at_end()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (!at_end() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(line_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier(const char* what) {
    skip();
    const std::size_t start = pos_;
    if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail(line_, std::string("expected ") + what);
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  double decimal(bool& integral) {
    const std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == 'e' || peek() == 'E' ||
                         ((peek() == '-' || peek() == '+') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    const std::string tok(text_.substr(start, pos_ - start));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      fail(line_, "bad number '" + tok + "'");
    }
    if (used != tok.size()) fail(line_, "bad number '" + tok + "'");
    integral = tok.find_first_of(".eE") == std::string::npos;
    return v;
  }

  ConfigValue value() {
    skip();
    ConfigValue v;
    v.line = line_;
    const char c = peek();
    if (c == '[') {
      ++pos_;
      v.kind = ConfigValue::Kind::Array;
      skip();
      if (peek() == ']') {
        ++pos_;
        return v;
      }
      for (;;) {
        v.items.push_back(value());
        skip();
        if (peek() == ',') {
          ++pos_;
          skip();
          if (peek() == ']') {
            ++pos_;
            return v;
          }
          continue;
        }
        if (peek() == ']') {
          ++pos_;
          return v;
        }
        fail(line_, "expected ',' or ']'");
      }
    }
    if (c == '"') {
      ++pos_;
      const std::size_t start = pos_;
      while (!at_end() && peek() != '"' && peek() != '\n') ++pos_;
      if (peek() != '"') fail(v.line, "unterminated string");
      v.kind = ConfigValue::Kind::String;
      v.text = std::string(text_.substr(start, pos_ - start));
      ++pos_;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::string word = identifier("value");
      if (word != "true" && word != "false") fail(v.line, "unexpected word '" + word + "'");
      v.kind = ConfigValue::Kind::Bool;
      v.boolean = word == "true";
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      v.kind = ConfigValue::Kind::Number;
      bool integral = false;
      v.number = decimal(integral);
      v.integral = integral;
      skip();
      if (peek() == '/') {
        ++pos_;
        skip();
        bool den_integral = false;
        const double den = decimal(den_integral);
        if (!integral || !den_integral) fail(v.line, "fractions take integer parts");
        if (den == 0.0) fail(v.line, "zero denominator");
        v.number /= den;
        v.integral = false;
      }
      return v;
    }
    fail(line_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

std::string where(std::string_view what, int line) { return std::string(what) + " (line " + std::to_string(line) + ")"; }

/// Generator index for a key suffix: a -> 1, b -> 2, ...
int generator_of(const std::string& name, int line) {
  if (name.size() != 1 || name[0] < 'a' || name[0] > 'z') fail(line, "generators are named a..z, got '" + name + "'");
  return name[0] - 'a' + 1;
}

Permutation permutation_value(const ConfigValue& v, int n, std::string_view what) {
  if (v.kind == ConfigValue::Kind::String) return parse_cycles(v.text, n);
  std::vector<long long> raw = v.as_integer_vector(what);
  if (static_cast<int>(raw.size()) != n) fail(v.line, std::string(what) + " must list " + std::to_string(n) + " images");
  Permutation p;
  for (long long x : raw) {
    if (x < 0 || x >= n) throw Error(ErrorKind::NonBijective, where(what, v.line) + ": image out of range");
    p.push_back(static_cast<int>(x));
  }
  if (!is_bijection(p)) throw Error(ErrorKind::NonBijective, where(what, v.line));
  return p;
}

/// perm.a, perm.b, ... entries; missing generators up to `rank` act trivially.
std::vector<Permutation> permutations(const ConfigBlock& b, int rank, int n) {
  std::vector<Permutation> perms(static_cast<std::size_t>(rank), identity_permutation(n));
  for (const auto& [key, v] : b.entries) {
    if (key.rfind("perm.", 0) != 0) continue;
    const int s = generator_of(key.substr(5), v.line);
    if (s > rank) fail(v.line, key + " exceeds rank " + std::to_string(rank));
    perms[static_cast<std::size_t>(s - 1)] = permutation_value(v, n, key);
  }
  return perms;
}

void check_keys(const ConfigBlock& b, const std::set<std::string>& allowed, const std::string& prefix = "") {
  for (const auto& [key, v] : b.entries) {
    if (allowed.contains(key)) continue;
    if (!prefix.empty() && key.rfind(prefix, 0) == 0) continue;
    fail(v.line, "unknown key '" + key + "' in block '" + b.name + "'");
  }
}

Eigen::VectorXd to_vector(const std::vector<double>& xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows, int m, int line, const std::string& what) {
  if (static_cast<int>(rows.size()) != m) fail(line, what + " must have " + std::to_string(m) + " rows");
  Eigen::MatrixXd M(m, m);
  for (int a = 0; a < m; ++a) {
    if (static_cast<int>(rows[static_cast<std::size_t>(a)].size()) != m) fail(line, what + " must be square");
    for (int b = 0; b < m; ++b) M(a, b) = rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  return M;
}

int required_int(const ConfigBlock& b, const char* key) {
  const ConfigValue* v = b.find(key);
  if (!v) fail(b.line, "block '" + b.name + "' needs '" + key + "'");
  return static_cast<int>(v->as_integer(key));
}

TreeMarkovMeasure markov_from(const ConfigBlock& b) {
  check_keys(b, {"m", "pi", "rank", "P"}, "P.");
  const ConfigValue* pi_v = b.find("pi");
  if (!pi_v) fail(b.line, "markov block needs 'pi'");
  const Eigen::VectorXd pi = to_vector(pi_v->as_vector("pi"));
  const int m = static_cast<int>(pi.size());
  if (const ConfigValue* mv = b.find("m"); mv && mv->as_integer("m") != m) fail(mv->line, "m differs from the length of pi");

  std::vector<std::pair<int, Eigen::MatrixXd>> named;
  for (const auto& [key, v] : b.entries) {
    if (key.rfind("P.", 0) != 0) continue;
    named.emplace_back(generator_of(key.substr(2), v.line), to_matrix(v.as_matrix(key), m, v.line, key));
  }
  std::vector<Eigen::MatrixXd> trans;
  if (const ConfigValue* shared = b.find("P")) {
    if (!named.empty()) fail(shared->line, "give either P or P.<generator>, not both");
    const int rank = required_int(b, "rank");
    if (rank < 1) fail(b.line, "rank must be positive");
    trans.assign(static_cast<std::size_t>(rank), to_matrix(shared->as_matrix("P"), m, shared->line, "P"));
  } else {
    if (named.empty()) fail(b.line, "markov block needs transition matrices");
    trans.resize(named.size());
    for (auto& [s, M] : named) {
      if (s > static_cast<int>(named.size())) fail(b.line, "transition matrices must be named a, b, ... without gaps");
      trans[static_cast<std::size_t>(s - 1)] = std::move(M);
    }
    if (const ConfigValue* rv = b.find("rank"); rv && rv->as_integer("rank") != static_cast<long long>(trans.size())) {
      fail(rv->line, "rank differs from the number of transition matrices");
    }
  }
  return TreeMarkovMeasure(pi, std::move(trans));
}

TreeMarkovMeasure bernoulli_from(const ConfigBlock& b) {
  check_keys(b, {"rank", "dist"});
  const ConfigValue* d = b.find("dist");
  if (!d) fail(b.line, "bernoulli block needs 'dist'");
  const Eigen::VectorXd dist = to_vector(d->as_vector("dist"));
  for (Eigen::Index i = 0; i < dist.size(); ++i) {
    if (!(dist(i) > 0.0)) throw Error(ErrorKind::ZeroMass, where("dist", d->line) + ": entries must be positive");
  }
  const int rank = required_int(b, "rank");
  if (rank < 1) fail(b.line, "rank must be positive");
  return bernoulli(dist, rank);
}

FiniteAction finite_from(const ConfigBlock& b) {
  check_keys(b, {"N", "rank", "mu", "alpha"}, "perm.");
  const int n = required_int(b, "N");
  const int rank = required_int(b, "rank");
  if (n < 1 || rank < 1) fail(b.line, "N and rank must be positive");
  std::vector<double> mu(static_cast<std::size_t>(n), 1.0 / n);
  if (const ConfigValue* v = b.find("mu")) {
    mu = v->as_vector("mu");
    if (static_cast<int>(mu.size()) != n) fail(v->line, "mu must have N entries");
  }
  std::vector<int> alpha(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) alpha[static_cast<std::size_t>(x)] = x;
  if (const ConfigValue* v = b.find("alpha")) {
    const auto raw = v->as_integer_vector("alpha");
    if (static_cast<int>(raw.size()) != n) fail(v->line, "alpha must have N entries");
    for (int x = 0; x < n; ++x) alpha[static_cast<std::size_t>(x)] = static_cast<int>(raw[static_cast<std::size_t>(x)]);
  }
  return FiniteAction(permutations(b, rank, n), std::move(mu), std::move(alpha));
}

CosetAction coset_from(const ConfigBlock& b) {
  check_keys(b, {"rank", "index"}, "perm.");
  const int rank = required_int(b, "rank");
  const int index = required_int(b, "index");
  if (rank < 1 || index < 1) fail(b.line, "rank and index must be positive");
  return CosetAction(rank, permutations(b, rank, index));
}

KpsSpec kps_from(const ConfigBlock& b) {
  check_keys(b, {"edges", "vertices", "index"});
  KpsSpec k;
  const ConfigValue* e = b.find("edges");
  const ConfigValue* v = b.find("vertices");
  if (!e || !v) fail(b.line, "kps block needs 'edges' and 'vertices'");
  k.edges = e->as_integer_vector("edges");
  k.vertices = v->as_integer_vector("vertices");
  if (const ConfigValue* i = b.find("index")) k.index = i->as_integer("index");
  return k;
}

}  // namespace

double ConfigValue::as_number(std::string_view what) const {
  if (kind != Kind::Number) fail(line, std::string(what) + " must be a number");
  return number;
}

long long ConfigValue::as_integer(std::string_view what) const {
  if (kind != Kind::Number || !integral) fail(line, std::string(what) + " must be an integer");
  return static_cast<long long>(number);
}

bool ConfigValue::as_bool(std::string_view what) const {
  if (kind != Kind::Bool) fail(line, std::string(what) + " must be true or false");
  return boolean;
}

const std::string& ConfigValue::as_string(std::string_view what) const {
  if (kind != Kind::String) fail(line, std::string(what) + " must be a string");
  return text;
}

std::vector<double> ConfigValue::as_vector(std::string_view what) const {
  if (kind != Kind::Array) fail(line, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& it : items) out.push_back(it.as_number(what));
  return out;
}

std::vector<long long> ConfigValue::as_integer_vector(std::string_view what) const {
  if (kind != Kind::Array) fail(line, std::string(what) + " must be an array");
  std::vector<long long> out;
  for (const auto& it : items) out.push_back(it.as_integer(what));
  return out;
}

std::vector<std::vector<double>> ConfigValue::as_matrix(std::string_view what) const {
  if (kind != Kind::Array) fail(line, std::string(what) + " must be an array of rows");
  std::vector<std::vector<double>> out;
  for (const auto& row : items) out.push_back(row.as_vector(what));
  return out;
}

const ConfigValue* ConfigBlock::find(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::vector<ConfigBlock> parse_config_blocks(std::string_view text) { return Parser(text).blocks(); }

std::string config_hash(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  cfg.hash = config_hash(text);
  for (const ConfigBlock& b : parse_config_blocks(text)) {
    const bool is_measure = b.name == "markov" || b.name == "bernoulli" || b.name == "finite";
    if (is_measure) {
      if (cfg.measure) fail(b.line, "only one measure block is allowed");
      cfg.measure_block = b.name;
      if (b.name == "markov") cfg.measure.emplace(markov_from(b));
      else if (b.name == "bernoulli") cfg.measure.emplace(bernoulli_from(b));
      else cfg.measure.emplace(finite_from(b));
    } else if (b.name == "coset") {
      if (cfg.coset) fail(b.line, "only one coset block is allowed");
      cfg.coset.emplace(coset_from(b));
    } else if (b.name == "kps") {
      if (cfg.kps) fail(b.line, "only one kps block is allowed");
      cfg.kps = kps_from(b);
    } else if (b.name == "options") {
      check_keys(b, {"n_max", "tol", "seed", "log2"});
      if (const ConfigValue* v = b.find("n_max")) {
        const long long n = v->as_integer("n_max");
        if (n < 0 || n > 64) fail(v->line, "n_max must lie in 0..64");
        cfg.options.n_max = static_cast<int>(n);
      }
      if (const ConfigValue* v = b.find("tol")) {
        cfg.options.tol = v->as_number("tol");
        if (!(cfg.options.tol > 0.0) || cfg.options.tol >= 1.0) fail(v->line, "tol must lie in (0, 1)");
      }
      if (const ConfigValue* v = b.find("seed")) {
        const long long s = v->as_integer("seed");
        if (s < 0) fail(v->line, "seed must be non-negative");
        cfg.options.seed = static_cast<std::uint64_t>(s);
      }
      if (const ConfigValue* v = b.find("log2")) cfg.options.log2 = v->as_bool("log2");
    } else if (b.name == "identities") {
      check_keys(b, {"rank", "radius", "count"});
      if (const ConfigValue* v = b.find("rank")) cfg.identities.rank = static_cast<int>(v->as_integer("rank"));
      if (const ConfigValue* v = b.find("radius")) cfg.identities.radius = static_cast<int>(v->as_integer("radius"));
      if (const ConfigValue* v = b.find("count")) cfg.identities.count = static_cast<int>(v->as_integer("count"));
    } else {
      fail(b.line, "unknown block '" + b.name + "'");
    }
  }
  if (cfg.measure && cfg.coset && measure_rank(*cfg.measure) != cfg.coset->rank()) {
    throw Error(ErrorKind::RankMismatch, "measure and coset blocks have different ranks");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_markov_block(const TreeMarkovMeasure& tm) {
  std::string out = "markov {\n  m = " + std::to_string(tm.alphabet_size()) + "\n  pi = [";
  for (int a = 0; a < tm.alphabet_size(); ++a) out += (a ? ", " : "") + format_real(tm.pi()(a));
  out += "]\n";
  for (int s = 1; s <= tm.rank(); ++s) {
    out += "  P." + std::string(1, static_cast<char>('a' + s - 1)) + " = [";
    const auto& P = tm.forward(s);
    for (int a = 0; a < tm.alphabet_size(); ++a) {
      out += a ? ", [" : "[";
      for (int b = 0; b < tm.alphabet_size(); ++b) out += (b ? ", " : "") + format_real(P(a, b));
      out += "]";
    }
    out += "]\n";
  }
  return out + "}\n";
}

}  // namespace finv
