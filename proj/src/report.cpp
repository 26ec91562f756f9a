#include "finv/report.hpp"

#include <algorithm>
#include <cstdio>

#include "finv/error.hpp"

namespace finv {

namespace {

Json matrix_json(const Eigen::MatrixXd& M) {
  Json rows = Json::array();
  for (Eigen::Index a = 0; a < M.rows(); ++a) {
    Json row = Json::array();
    for (Eigen::Index b = 0; b < M.cols(); ++b) row.push_back(M(a, b));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string pad(const std::string& s, std::size_t width) { return s.size() >= width ? s : s + std::string(width - s.size(), ' '); }

std::string fixed(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10f", x);
  return buf;
}

}  // namespace

Json to_json(const EntropyReport& r) {
  Json terms = Json::array();
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    terms.push_back(Json{{"generator", i < r.term_labels.size() ? r.term_labels[i] : ""}, {"value", r.terms[i]}});
  }
  return Json{{"value", r.value}, {"base_entropy", r.base_entropy}, {"terms", terms}, {"sequence", r.sequence}, {"stabilized", r.stabilized}};
}

EntropyReport entropy_report_from_json(const Json& j) {
  try {
    EntropyReport r;
    r.value = j.at("value").get<double>();
    r.base_entropy = j.at("base_entropy").get<double>();
    for (const auto& t : j.at("terms")) {
      r.term_labels.push_back(t.at("generator").get<std::string>());
      r.terms.push_back(t.at("value").get<double>());
    }
    r.sequence = j.at("sequence").get<std::vector<double>>();
    r.stabilized = j.at("stabilized").get<bool>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("malformed entropy report: ") + e.what());
  }
}

Json to_json(const VerificationReport& r) {
  Json info = Json::object();
  for (const auto& [k, v] : r.info) info[k] = v;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"tolerance", c.tolerance}, {"pass", c.pass}, {"anchor", c.anchor}});
  }
  return Json{{"command", r.command},
              {"config_hash", r.config_hash},
              {"info", info},
              {"checks", checks},
              {"summary", Json{{"passed", r.passed()}, {"failed", r.failed()}}},
              {"exit_status", r.exit_status()}};
}

VerificationReport verification_report_from_json(const Json& j) {
  try {
    VerificationReport r;
    r.command = j.at("command").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    for (const auto& [k, v] : j.at("info").items()) r.info.emplace_back(k, v.get<std::string>());
    for (const auto& c : j.at("checks")) {
      r.checks.push_back(CheckRecord{c.at("name").get<std::string>(), c.at("lhs").get<std::string>(), c.at("rhs").get<std::string>(),
                                     c.at("tolerance").get<double>(), c.at("pass").get<bool>(), c.at("anchor").get<std::string>()});
    }
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("malformed verification report: ") + e.what());
  }
}

Json to_json(const TreeMarkovMeasure& tm) {
  std::vector<double> pi(tm.pi().data(), tm.pi().data() + tm.alphabet_size());
  Json trans = Json::object();
  for (int s = 1; s <= tm.rank(); ++s) trans[Word::generator(tm.rank(), s).str()] = matrix_json(tm.forward(s));
  return Json{{"m", tm.alphabet_size()}, {"rank", tm.rank()}, {"pi", pi}, {"P", trans}};
}

Json to_json(const PatternMeasure& pm) {
  Json coords = Json::array();
  for (const auto& w : pm.coords) coords.push_back(w.str());
  Json legend = Json::array();
  for (std::size_t k = 0; k < pm.legend.size(); ++k) {
    Json pattern = Json::object();
    for (std::size_t i = 0; i < pm.coords.size(); ++i) pattern[pm.coords[i].str()] = pm.legend[k][i];
    legend.push_back(Json{{"symbol", k}, {"pattern", pattern}});
  }
  Json j = to_json(pm.measure);
  j["coords"] = coords;
  j["legend"] = legend;
  return j;
}

std::string format_table(const EntropyReport& r, double scale, const std::string& unit) {
  std::size_t width = 12;
  for (const auto& l : r.term_labels) width = std::max(width, l.size() + 17);
  std::string out;
  out += pad("f", width) + fixed(r.value / scale) + " " + unit + "\n";
  out += pad("H(beta)", width) + fixed(r.base_entropy / scale) + "\n";
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    const std::string label = "H(" + (i < r.term_labels.size() ? r.term_labels[i] : "?") + " beta v beta)";
    out += pad(label, width) + fixed(r.terms[i] / scale) + "\n";
  }
  if (!r.sequence.empty()) {
    out += pad("sequence", width);
    for (std::size_t n = 0; n < r.sequence.size(); ++n) out += (n ? " " : "") + fixed(r.sequence[n] / scale);
    out += "\n";
  }
  out += pad("stabilized", width) + (r.stabilized ? "true" : "false") + "\n";
  return out;
}

std::string format_table(const VerificationReport& r) {
  std::string out;
  std::size_t key_width = 0;
  for (const auto& [k, v] : r.info) key_width = std::max(key_width, k.size());
  for (const auto& [k, v] : r.info) out += pad(k, key_width + 2) + v + "\n";
  std::size_t name_width = 4;
  for (const auto& c : r.checks) name_width = std::max(name_width, c.name.size());
  for (const auto& c : r.checks) {
    out += std::string(c.pass ? "PASS  " : "FAIL  ") + pad(c.name, name_width + 2) + c.lhs + " vs " + c.rhs;
    if (c.tolerance > 0.0) out += "  (tol " + format_real(c.tolerance) + ")";
    out += "  [" + c.anchor + "]\n";
  }
  out += std::to_string(r.passed()) + " passed, " + std::to_string(r.failed()) + " failed";
  if (!r.config_hash.empty()) out += "  config " + r.config_hash;
  return out + "\n";
}

}  // namespace finv
