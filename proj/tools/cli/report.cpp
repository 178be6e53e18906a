#include "report.hpp"

#include <charconv>
#include <cmath>
#include <type_traits>
#include <ostream>

#include "dioph/error.hpp"

#ifndef DIOPH_VERSION
#define DIOPH_VERSION "unknown"
#endif

namespace dioph::cli {

namespace {

nlohmann::ordered_json header(const Report& r) {
  nlohmann::ordered_json h;
  h["tool"] = "dioph";
  h["version"] = DIOPH_VERSION;
  h["command"] = r.command;
  h["quantity"] = r.quantity;
  h["parameters"] = r.parameters;
  return h;
}

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return csv_escape(v);
        } else {
          return std::to_string(v);
        }
      },
      c);
}

std::string scalar_text(const nlohmann::ordered_json& j) {
  if (j.is_string()) return csv_escape(j.get<std::string>());
  if (j.is_number_float()) return format_double(j.get<double>());
  if (j.is_null()) return "nan";
  return j.dump();
}

void flatten(const nlohmann::ordered_json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out << csv_escape(prefix) << ',' << scalar_text(j) << '\n';
  }
}

}  // namespace

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error("report: row width does not match columns");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["header"] = header(r);
  if (!r.body.is_null()) {
    j["result"] = r.body;
    return j;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < row.size(); ++i) o[r.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  return j;
}

void write_csv(std::ostream& out, const Report& r) {
  const auto h = header(r);
  for (const auto& [k, v] : h.items()) {
    if (k == "parameters") {
      for (const auto& [pk, pv] : v.items()) out << "# " << pk << ": " << scalar_text(pv) << '\n';
    } else {
      out << "# " << k << ": " << v.get<std::string>() << '\n';
    }
  }
  if (!r.body.is_null()) {
    out << "key,value\n";
    flatten(r.body, "", out);
    return;
  }
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void write(std::ostream& out, const Report& r, Format f) {
  if (f == Format::json) {
    out << to_json(r).dump(2) << '\n';
  } else {
    write_csv(out, r);
  }
}

}  // namespace dioph::cli
