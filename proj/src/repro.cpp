#include "torus/repro.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "torus/eigensolver.hpp"
#include "torus/wavefunction.hpp"

namespace torus {

using json = nlohmann::ordered_json;

namespace {

ModeSpec mode_of(const json& table) {
  return {table.at("m").get<int>(), parse_parity(table.at("parity").get<std::string>())};
}

const Eigenpair& state_of(const std::vector<Eigenpair>& pairs, int state) {
  for (const Eigenpair& p : pairs) {
    if (p.state == state) return p;
  }
  throw std::runtime_error("state " + std::to_string(state) + " not found");
}

ReportRow compare(std::string label, double computed, double paper, double tolerance) {
  const double diff = std::abs(computed - paper);
  return {std::move(label), computed, paper, diff, diff <= tolerance};
}

double nearest(const std::vector<double>& roots, double target) {
  double best = std::numeric_limits<double>::quiet_NaN();
  for (double r : roots) {
    if (std::isnan(best) || std::abs(r - target) < std::abs(best - target)) best = r;
  }
  return best;
}

TableReport eigenvalue_table(int id, const json& table, double alpha,
                             const OracleConfig& oracle) {
  const ModeSpec mode = mode_of(table);
  const double tolerance = table.at("tolerance").get<double>();
  const auto truncations = table.at("truncations").get<std::vector<int>>();
  const auto columns = table.at("columns").get<std::vector<std::string>>();
  const int offset = table.at("order_offset").get<int>();
  const json& rows = table.at("rows");
  const json& windows = table.at("absent_windows");
  const json& brackets = table.at("rk_brackets");

  TableReport report;
  report.table = id;
  report.tolerances = json{{"eigenvalue_abs", tolerance}, {"order_offset", offset}};

  std::vector<std::vector<double>> roots;
  for (int n : truncations) {
    roots.push_back(determinant_roots(alpha, mode, n + offset));
  }

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto label = rows[r].at("label").get<std::string>();
    const auto cells = rows[r].at("cells").get<std::vector<std::string>>();
    for (std::size_t c = 0; c < truncations.size(); ++c) {
      const std::string name = label + " " + columns[c];
      const auto paper = parse_cell(cells[c]);
      if (paper) {
        report.rows.push_back(compare(name, nearest(roots[c], *paper), *paper, tolerance));
        continue;
      }
      const auto window = windows.at(r).get<std::array<double, 2>>();
      ReportRow row{name + " absent", std::nullopt, std::nullopt, 0.0, true};
      for (double root : roots[c]) {
        if (root > window[0] && root < window[1]) {
          row.computed = root;
          row.pass = false;
          break;
        }
      }
      report.rows.push_back(row);
    }
    const auto bracket = brackets.at(r).get<std::array<double, 2>>();
    const double de = rk_find_eigenvalue(alpha, mode.m, mode.parity, bracket[0], bracket[1],
                                          oracle);
    const auto paper_de = parse_cell(cells.at(truncations.size()));
    report.rows.push_back(compare(label + " " + columns.at(truncations.size()), de,
                                  paper_de.value(), tolerance));
  }
  return report;
}

TableReport sample_table(const json& table, double alpha, const OracleConfig& oracle) {
  const ModeSpec mode = mode_of(table);
  const double tolerance = table.at("tolerance").get<double>();
  const auto columns = table.at("columns").get<std::vector<std::string>>();
  std::vector<double> thetas = table.at("thetas_over_pi").get<std::vector<double>>();
  for (double& t : thetas) t *= std::numbers::pi;

  TableReport report;
  report.table = 4;
  report.tolerances = json{{"sample_abs", tolerance}, {"scale", "least squares, one per row"}};

  const auto pairs = find_eigenvalues(alpha, mode, table.at("order").get<int>());
  const Eigenpair& pair = state_of(pairs, table.at("state").get<int>());
  const Eigenfunction psi = from_series(pair.series, pair.beta, pair.state);
  const double rk_beta = rk_find_eigenvalue(alpha, mode.m, mode.parity, pair.beta - 0.01,
                                            pair.beta + 0.01, oracle);

  for (const json& row : table.at("rows")) {
    const auto label = row.at("label").get<std::string>();
    const auto cells = row.at("cells").get<std::vector<std::string>>();
    std::vector<ThetaValue> paper;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      paper.push_back({thetas[i], parse_cell(cells[i]).value()});
    }
    const std::vector<ThetaValue> ours =
        label == "psi_FS" ? sample(psi, thetas)
                          : rk_sample(alpha, mode.m, rk_beta, mode.parity, thetas, oracle);
    const ScaledComparison fit = compare_scaled(ours, paper);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      report.rows.push_back(compare(label + " " + columns[i], fit.scale * ours[i].psi,
                                    paper[i].psi, tolerance));
    }
  }
  return report;
}

double trig_coefficient(const Eigenfunction& psi, const std::string& basis) {
  if (basis == "1") return psi.a.at(0);
  const int k = std::stoi(basis.substr(3));
  if (basis.rfind("cos", 0) == 0) return psi.a.at(static_cast<std::size_t>(k));
  if (basis.rfind("sin", 0) == 0) return psi.b.at(static_cast<std::size_t>(k));
  throw std::runtime_error("unknown basis function '" + basis + "'");
}

TableReport coefficient_table(const json& table, double alpha) {
  const double tolerance = table.at("ratio_tolerance").get<double>();
  const double factor = table.at("unprinted_factor").get<double>();
  const int order = table.at("order").get<int>();

  TableReport report;
  report.table = 5;
  report.tolerances = json{{"ratio_rel", tolerance}, {"unprinted_factor", factor}};

  for (const json& fn : table.at("functions")) {
    const auto label = fn.at("label").get<std::string>();
    const ModeSpec mode = mode_of(fn);
    const auto pairs = find_eigenvalues(alpha, mode, order);
    const Eigenpair& pair = state_of(pairs, fn.at("state").get<int>());
    const Eigenfunction psi = from_series(pair.series, pair.beta, pair.state);

    const json& terms = fn.at("terms");
    const auto reference_basis = terms.at(0).at("basis").get<std::string>();
    const double reference = trig_coefficient(psi, reference_basis);
    const double paper_reference =
        parse_cell(terms.at(0).at("coefficient").get<std::string>()).value();

    std::vector<std::string> printed;
    double smallest_printed = std::numeric_limits<double>::infinity();
    for (const json& term : terms) {
      const auto basis = term.at("basis").get<std::string>();
      printed.push_back(basis);
      smallest_printed = std::min(smallest_printed, std::abs(trig_coefficient(psi, basis)));
      if (basis == reference_basis) continue;
      const double computed = trig_coefficient(psi, basis) / reference;
      const double paper =
          parse_cell(term.at("coefficient").get<std::string>()).value() / paper_reference;
      const double diff = std::abs(computed - paper);
      report.rows.push_back({label + " " + basis + "/" + reference_basis, computed, paper,
                             diff, diff <= tolerance * std::abs(paper)});
    }

    double largest_unprinted = 0.0;
    for (int k = 0; k <= psi.order(); ++k) {
      for (const std::string& basis : {"cos" + std::to_string(k), "sin" + std::to_string(k)}) {
        const std::string key = basis == "cos0" ? "1" : basis;
        if (basis == "sin0" || std::find(printed.begin(), printed.end(), key) != printed.end()) {
          continue;
        }
        largest_unprinted = std::max(largest_unprinted, std::abs(trig_coefficient(psi, key)));
      }
    }
    const double ratio = largest_unprinted / smallest_printed;
    report.rows.push_back({label + " unprinted/smallest", ratio, factor,
                           std::abs(ratio - factor), ratio <= factor});
  }
  return report;
}

}  // namespace

std::optional<double> parse_cell(const std::string& cell) {
  if (!cell.empty() && cell.find_first_not_of('*') == std::string::npos) return std::nullopt;
  std::size_t used = 0;
  const double value = std::stod(cell, &used);
  if (used != cell.size()) throw std::runtime_error("bad table cell '" + cell + "'");
  return value;
}

json load_paper_tables(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

TableReport reproduce_table(int table, const json& golden, const OracleConfig& oracle) {
  if (table < 1 || table > 5) {
    throw std::invalid_argument("table must be 1..5, got " + std::to_string(table));
  }
  oracle.validate();
  const double alpha = golden.at("alpha").get<double>();
  const json& data = golden.at("tables").at(std::to_string(table));

  TableReport report;
  if (table <= 3) {
    report = eigenvalue_table(table, data, alpha, oracle);
  } else if (table == 4) {
    report = sample_table(data, alpha, oracle);
  } else {
    report = coefficient_table(data, alpha);
  }
  report.pass = std::all_of(report.rows.begin(), report.rows.end(),
                            [](const ReportRow& r) { return r.pass; });
  return report;
}

void to_json(json& j, const ReportRow& row) {
  j = json{{"label", row.label},
           {"computed", row.computed ? json(*row.computed) : json(nullptr)},
           {"paper", row.paper ? json(*row.paper) : json(nullptr)},
           {"abs_diff", row.abs_diff},
           {"pass", row.pass}};
}

void to_json(json& j, const TableReport& report) {
  j = json{{"table", report.table},
           {"pass", report.pass},
           {"tolerances", report.tolerances},
           {"rows", report.rows}};
}

void render(std::ostream& out, const TableReport& report) {
  const auto cell = [](const std::optional<double>& v) {
    char buffer[32];
    if (v) {
      std::snprintf(buffer, sizeof buffer, "%.6f", *v);
    } else {
      std::snprintf(buffer, sizeof buffer, "%s", "-");
    }
    return std::string(buffer);
  };
  char line[160];
  std::snprintf(line, sizeof line, "Table %d\n%-26s %14s %14s %10s  %s\n", report.table,
                "row", "computed", "paper", "|diff|", "status");
  out << line;
  for (const ReportRow& row : report.rows) {
    std::snprintf(line, sizeof line, "%-26s %14s %14s %10.2e  %s\n", row.label.c_str(),
                  cell(row.computed).c_str(), cell(row.paper).c_str(), row.abs_diff,
                  row.pass ? "ok" : "FAIL");
    out << line;
  }
  out << "table " << report.table << ": " << (report.pass ? "PASS" : "FAIL") << '\n';
}

}  // namespace torus
