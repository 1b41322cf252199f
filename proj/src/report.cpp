#include "rispace/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rispace {

namespace {

using json = nlohmann::ordered_json;

json to_json_value(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return json(v > 0 ? "inf" : (v < 0 ? "-inf" : "nan"));
          return json(v);
        } else {
          return json(v);
        }
      },
      c);
}

std::string shortest(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return shortest(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string out = "\"";
          for (char ch : v) {
            if (ch == '"') out += '"';
            out += ch;
          }
          return out + "\"";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

std::string text_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return shortest(*d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", *d);
    return buf;
  }
  return csv_cell(c);
}

}  // namespace

Table& ExperimentReport::add_table(std::string table_name, std::vector<std::string> columns) {
  tables.push_back({std::move(table_name), std::move(columns), {}});
  return tables.back();
}

const Cell* ExperimentReport::find_summary(const std::string& key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return &v;
  }
  return nullptr;
}

double ExperimentReport::summary_number(const std::string& key) const {
  const Cell* c = find_summary(key);
  if (!c) throw std::out_of_range("report '" + name + "' has no summary entry '" + key + "'");
  if (const double* d = std::get_if<double>(c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(c)) return static_cast<double>(*i);
  if (const bool* b = std::get_if<bool>(c)) return *b ? 1.0 : 0.0;
  throw std::invalid_argument("summary entry '" + key + "' is not numeric");
}

std::string ExperimentReport::to_json() const {
  json j;
  j["experiment"] = name;
  j["version"] = version;
  json params = json::object();
  for (const auto& [k, v] : parameters) params[k] = to_json_value(v);
  j["parameters"] = params;
  json tol = json::object();
  for (const auto& [k, v] : tolerances) tol[k] = v;
  j["tolerances"] = tol;
  json tabs = json::array();
  for (const Table& t : tables) {
    json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    json rows = json::array();
    for (const auto& row : t.rows) {
      json r = json::array();
      for (const Cell& c : row) r.push_back(to_json_value(c));
      rows.push_back(std::move(r));
    }
    jt["rows"] = std::move(rows);
    tabs.push_back(std::move(jt));
  }
  j["tables"] = std::move(tabs);
  json sum = json::object();
  for (const auto& [k, v] : summary) sum[k] = to_json_value(v);
  j["summary"] = sum;
  j["pass"] = pass;
  return j.dump(2) + "\n";
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  for (const Table& t : tables) {
    out << "# table: " << t.name << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      out << (i ? "," : "") << csv_cell(t.columns[i]);
    }
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << "\n";
    }
  }
  return out.str();
}

std::string ExperimentReport::to_text() const {
  std::ostringstream out;
  out << "experiment: " << name << " (v" << version << ")\n";
  for (const auto& [k, v] : parameters) out << "  " << k << " = " << text_cell(v) << "\n";
  if (!tolerances.empty()) {
    out << "tolerances:\n";
    for (const auto& [k, v] : tolerances) out << "  " << k << " = " << text_cell(v) << "\n";
  }
  for (const Table& t : tables) {
    out << "\n[" << t.name << "]\n";
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : t.rows) {
      std::vector<std::string> r;
      for (std::size_t i = 0; i < row.size(); ++i) {
        r.push_back(text_cell(row[i]));
        if (i < width.size()) width[i] = std::max(width[i], r.back().size());
      }
      cells.push_back(std::move(r));
    }
    auto emit = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        const std::size_t w = i < width.size() ? width[i] : r[i].size();
        out << (i ? "  " : "") << std::string(w - std::min(w, r[i].size()), ' ') << r[i];
      }
      out << "\n";
    };
    emit(t.columns);
    for (const auto& r : cells) emit(r);
  }
  out << "\nsummary:\n";
  for (const auto& [k, v] : summary) out << "  " << k << " = " << text_cell(v) << "\n";
  out << "result: " << (pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

ExperimentReport merge_reports(std::string name, std::vector<ExperimentReport> parts) {
  ExperimentReport out;
  out.name = std::move(name);
  out.pass = true;
  for (auto& part : parts) {
    const std::string prefix = part.name + ".";
    for (auto& [k, v] : part.parameters) out.parameters.emplace_back(prefix + k, std::move(v));
    for (auto& [k, v] : part.tolerances) {
      const bool seen = std::any_of(out.tolerances.begin(), out.tolerances.end(),
                                    [&](const auto& kv) { return kv.first == k; });
      if (!seen) out.tolerances.emplace_back(k, v);
    }
    for (auto& t : part.tables) {
      t.name = prefix + t.name;
      out.tables.push_back(std::move(t));
    }
    for (auto& [k, v] : part.summary) out.summary.emplace_back(prefix + k, std::move(v));
    out.summary.emplace_back(prefix + "pass", part.pass);
    out.pass = out.pass && part.pass;
  }
  return out;
}

}  // namespace rispace
