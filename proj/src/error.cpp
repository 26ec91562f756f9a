#include "finv/error.hpp"

namespace finv {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::BadWord: return "BadWord";
    case ErrorKind::NonBijective: return "NonBijective";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotInSubgroup: return "NotInSubgroup";
    case ErrorKind::ImageTooLarge: return "ImageTooLarge";
    case ErrorKind::NotBiConnected: return "NotBiConnected";
    case ErrorKind::NotRightConnected: return "NotRightConnected";
    case ErrorKind::NotLeftConnected: return "NotLeftConnected";
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::BadStochastic: return "BadStochastic";
    case ErrorKind::NotStationary: return "NotStationary";
    case ErrorKind::ZeroMass: return "ZeroMass";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotADistribution: return "NotADistribution";
    case ErrorKind::HullTooLarge: return "HullTooLarge";
    case ErrorKind::InconsistentMarginals: return "InconsistentMarginals";
    case ErrorKind::BadGenSet: return "BadGenSet";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

}  // namespace finv
