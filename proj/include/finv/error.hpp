#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finv {

enum class ErrorKind {
  RankMismatch,
  BadWord,
  NonBijective,
  NotTransitive,
  NotNormal,
  NotInSubgroup,
  ImageTooLarge,
  NotBiConnected,
  NotRightConnected,
  NotLeftConnected,
  MissingIdentity,
  BadStochastic,
  NotStationary,
  ZeroMass,
  NotInvariant,
  NotADistribution,
  HullTooLarge,
  InconsistentMarginals,
  BadGenSet,
  ConfigError,
  InternalError,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// Every library failure carries one of the named kinds above; the CLI prints
/// the name and exits with status 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace finv
