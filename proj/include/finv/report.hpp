#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "finv/entropy.hpp"
#include "finv/measure.hpp"
#include "finv/transforms.hpp"
#include "finv/verify.hpp"

namespace finv {

using Json = nlohmann::ordered_json;

Json to_json(const EntropyReport& r);
EntropyReport entropy_report_from_json(const Json& j);

Json to_json(const VerificationReport& r);
VerificationReport verification_report_from_json(const Json& j);

Json to_json(const TreeMarkovMeasure& tm);
/// Includes the legend mapping each new symbol to its block pattern.
Json to_json(const PatternMeasure& pm);

/// Aligned text tables for terminal output. `scale` divides every entropy
/// (1 for nats, ln 2 for bits).
std::string format_table(const EntropyReport& r, double scale, const std::string& unit);
std::string format_table(const VerificationReport& r);

}  // namespace finv
