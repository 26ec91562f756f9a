#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finv/measure.hpp"
#include "finv/random.hpp"
#include "finv/subgroup.hpp"

namespace finv {

/// One value of the structured-text format (see docs/config-grammar.md).
struct ConfigValue {
  enum class Kind { Number, Bool, String, Array };
  Kind kind = Kind::Number;
  double number = 0.0;
  bool integral = false;
  bool boolean = false;
  std::string text;
  std::vector<ConfigValue> items;
  int line = 0;

  double as_number(std::string_view what) const;
  long long as_integer(std::string_view what) const;
  bool as_bool(std::string_view what) const;
  const std::string& as_string(std::string_view what) const;
  std::vector<double> as_vector(std::string_view what) const;
  std::vector<long long> as_integer_vector(std::string_view what) const;
  std::vector<std::vector<double>> as_matrix(std::string_view what) const;
};

struct ConfigBlock {
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, ConfigValue>> entries;

  const ConfigValue* find(std::string_view key) const;
};

/// Throws ConfigError with the offending line number.
std::vector<ConfigBlock> parse_config_blocks(std::string_view text);

struct KpsSpec {
  std::vector<long long> edges;
  std::vector<long long> vertices;
  std::optional<long long> index;
};

struct RunOptions {
  std::optional<int> n_max;
  double tol = 1e-9;
  std::uint64_t seed = kDefaultSeed;
  bool log2 = false;
};

struct IdentitySpec {
  int rank = 2;
  int radius = 2;
  int count = 50;
};

/// The validated contents of a config file.
struct RunConfig {
  std::optional<Measure> measure;
  std::string measure_block;
  std::optional<CosetAction> coset;
  std::optional<KpsSpec> kps;
  RunOptions options;
  IdentitySpec identities;
  std::string hash;
};

/// Parses and validates; measure and coset validation errors propagate with
/// their own kinds.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// 64-bit FNV-1a of the config text, as 16 hex digits.
std::string config_hash(std::string_view text);

/// A `markov { ... }` block that parses back to the same measure.
std::string format_markov_block(const TreeMarkovMeasure& tm);

}  // namespace finv
