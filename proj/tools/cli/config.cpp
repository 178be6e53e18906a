#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "dioph/error.hpp"
#include "dioph/rational.hpp"

namespace dioph::cli {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

const char* const kKeys[] = {"lambda1", "lambda2", "lambda3", "k",
                             "varpi",   "eps",     "delta",   "lambda_ratio"};

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw FormatError("unknown output format '" + s + "' (csv or json)");
}

ParsedInstance parse_instance(std::istream& in, const std::string& source) {
  std::map<std::string, std::string> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError(source + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw FormatError(source + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw FormatError(source + ":" + std::to_string(lineno) + ": empty value for '" + key + "'");
    }
    if (!values.emplace(key, value).second) {
      throw FormatError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }

  auto expr = [&](const std::string& key) {
    try {
      return HiReal::parse(values.at(key));
    } catch (const FormatError& e) {
      throw FormatError(source + ": field '" + key + "': " + e.what());
    }
  };
  for (const char* key : {"lambda1", "lambda2", "lambda3", "k"}) {
    if (!values.count(key)) throw FormatError(source + ": missing required field '" + key + "'");
  }

  ParsedInstance out;
  ProblemInstance& inst = out.instance;
  const HiReal l1 = expr("lambda1");
  const HiReal l2 = expr("lambda2");
  inst.lambda1 = l1.to_double();
  inst.lambda2 = l2.to_double();
  inst.lambda3 = expr("lambda3").to_double();
  inst.k = expr("k").to_double();
  if (values.count("varpi")) inst.varpi = expr("varpi").to_double();
  if (values.count("eps")) inst.eps = expr("eps").to_double();
  if (values.count("delta")) inst.delta = expr("delta").to_double();
  inst.validate();
  if (!inst.mixed_signs()) {
    throw DomainError(source +
                      ": lambda1, lambda2, lambda3 must not all be of the same sign");
  }
  if (values.count("lambda_ratio")) {
    inst.lambda_ratio = expr("lambda_ratio");
    const double want = inst.lambda1 / inst.lambda2;
    if (std::fabs(inst.lambda_ratio->to_double() - want) > 1e-12 * std::fabs(want)) {
      throw DomainError(source + ": lambda_ratio does not equal lambda1 / lambda2");
    }
  } else {
    inst.lambda_ratio = l1 / l2;
  }
  if (inst.k_outside_theorem_range()) {
    std::ostringstream w;
    w << "k = " << inst.k << " lies outside 1 < k < 33/29; exponent formulas are applied formally";
    out.warnings.push_back(w.str());
  }
  return out;
}

ParsedInstance parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open instance file " + path.string());
  return parse_instance(in, path.string());
}

}  // namespace dioph::cli
