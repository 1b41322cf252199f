#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rispace {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Structured record of one verification run.
///
/// Everything in a report is derived from `parameters` (which include the
/// seed), so serializing the same run twice yields identical bytes.
struct ExperimentReport {
  std::string name;
  int version = 1;
  std::vector<std::pair<std::string, Cell>> parameters;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<Table> tables;
  std::vector<std::pair<std::string, Cell>> summary;
  bool pass = false;

  Table& add_table(std::string table_name, std::vector<std::string> columns);
  const Cell* find_summary(const std::string& key) const;
  double summary_number(const std::string& key) const;

  std::string to_json() const;
  /// Tables one after another, each preceded by a `# table: <name>` line.
  std::string to_csv() const;
  /// Aligned columns for reading in a terminal.
  std::string to_text() const;
};

/// Reports of several sub-experiments under one suite name; passes iff all do.
ExperimentReport merge_reports(std::string name, std::vector<ExperimentReport> parts);

}  // namespace rispace
