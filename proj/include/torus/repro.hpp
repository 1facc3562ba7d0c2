#pragma once

// Recomputation of the published tables against the golden data file.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "torus/oracles.hpp"

namespace torus {

struct ReportRow {
  std::string label;
  std::optional<double> computed;  // empty: no value found (expected for absent cells)
  std::optional<double> paper;     // empty: the table prints asterisks
  double abs_diff = 0.0;
  bool pass = false;
};

struct TableReport {
  int table = 0;
  std::vector<ReportRow> rows;
  bool pass = false;
  nlohmann::ordered_json tolerances;
};

// Throws std::runtime_error when the file is missing or malformed.
nlohmann::ordered_json load_paper_tables(const std::filesystem::path& path);

// Throws std::invalid_argument unless 1 <= table <= 5.
TableReport reproduce_table(int table, const nlohmann::ordered_json& golden,
                            const OracleConfig& oracle = {});

void to_json(nlohmann::ordered_json& j, const ReportRow& row);
void to_json(nlohmann::ordered_json& j, const TableReport& report);

// Fixed-width text rendering, one line per row plus a verdict line.
void render(std::ostream& out, const TableReport& report);

// "0.1234" and ".1234" style cells; nullopt for asterisks.
std::optional<double> parse_cell(const std::string& cell);

}  // namespace torus
