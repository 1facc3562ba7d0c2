// torus: spectra, table reproduction and eigenfunction export for a particle
// on the surface of a torus.
//
// Exit codes: 0 success, 1 computation or tolerance failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torus/eigensolver.hpp"
#include "torus/model.hpp"
#include "torus/oracles.hpp"
#include "torus/records.hpp"
#include "torus/repro.hpp"
#include "torus/wavefunction.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace torus;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double alpha = 0.5;
  std::vector<int> m{0};
  std::string parity = "both";
  int order = 10;
  std::optional<double> beta_max;
  double scan_step = 0.02;
  std::string format = "json";
  std::string out;
  int rk_steps = 4096;
  int fd_grid = 1024;
  std::string data = std::string(TORUS_DEFAULT_DATA_DIR) + "/paper_tables.json";

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
    if (m.empty()) throw UsageError("--m needs at least one value");
    for (int v : m) {
      if (v < 0) throw UsageError("--m values must be nonnegative");
    }
    if (order < 2 || order > 200) throw UsageError("--order must lie in [2, 200]");
    if (beta_max && !(*beta_max > 0.0)) throw UsageError("--beta-max must be positive");
    if (!(scan_step > 0.0)) throw UsageError("--scan-step must be positive");
    try {
      oracle().validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  std::vector<Parity> parities() const {
    if (parity == "both") return {Parity::even, Parity::odd};
    return {parse_parity(parity)};
  }

  ScanOptions scan() const {
    ScanOptions options;
    if (beta_max) options.beta_max = *beta_max;
    options.scan_step = scan_step;
    return options;
  }

  OracleConfig oracle() const {
    OracleConfig config;
    config.rk_steps = rk_steps;
    config.fd_grid = fd_grid;
    return config;
  }
};

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_m_list = true) {
  cmd->add_option("--alpha", cfg.alpha, "aspect ratio a/R in (0, 1)");
  if (with_m_list) {
    cmd->add_option("--m", cfg.m, "azimuthal numbers, comma separated")->delimiter(',');
  }
  cmd->add_option("--order", cfg.order, "truncation N");
  cmd->add_option("--beta-max", cfg.beta_max, "upper end of the beta scan");
  cmd->add_option("--scan-step", cfg.scan_step, "beta scan step");
  cmd->add_option("--out", cfg.out, "output path (default stdout)");
  cmd->add_option("--rk-steps", cfg.rk_steps, "RK4 steps per pi");
  cmd->add_option("--fd-grid", cfg.fd_grid, "finite-difference grid size");
}

void emit(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw std::runtime_error("cannot write " + cfg.out);
  file << payload;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- spectrum --------------------------------------------------------------

int run_spectrum(const RunConfig& cfg) {
  std::vector<SpectrumRecord> records;
  for (int m : cfg.m) {
    for (Parity p : cfg.parities()) {
      const ModeSpec mode{m, p};
      const auto pairs = find_eigenvalues(cfg.alpha, mode, cfg.order, cfg.scan());
      records.push_back(make_record(cfg.alpha, mode, cfg.order, pairs));
    }
  }
  if (cfg.format == "csv") {
    std::ostringstream out;
    write_csv(out, records);
    emit(cfg, out.str());
  } else {
    emit(cfg, dump(json{{"spectra", records}}));
  }
  return kOk;
}

// --- repro -----------------------------------------------------------------

int run_repro(const RunConfig& cfg, int table) {
  const json golden = load_paper_tables(cfg.data);
  const TableReport report = reproduce_table(table, golden, cfg.oracle());
  if (cfg.format == "text") {
    std::ostringstream out;
    render(out, report);
    emit(cfg, out.str());
  } else if (cfg.format == "csv") {
    std::ostringstream out;
    out << "table,label,computed,paper,abs_diff,pass\n";
    for (const ReportRow& row : report.rows) {
      out << report.table << ',' << row.label << ','
          << (row.computed ? format_number(*row.computed) : "") << ','
          << (row.paper ? format_number(*row.paper) : "") << ','
          << format_number(row.abs_diff) << ',' << (row.pass ? "true" : "false") << '\n';
    }
    emit(cfg, out.str());
  } else {
    emit(cfg, dump(json(report)));
  }
  if (cfg.format != "text" && !cfg.out.empty()) render(std::cout, report);
  return report.pass ? kOk : kFailure;
}

// --- wavefn ----------------------------------------------------------------

struct StateRequest {
  int m = 0;
  Parity parity = Parity::even;
  std::string state = "1";
};

Eigenpair select_state(const RunConfig& cfg, const StateRequest& req) {
  const ModeSpec mode{req.m, req.parity};
  const auto pairs = find_eigenvalues(cfg.alpha, mode, cfg.order, cfg.scan());
  const bool trivial = req.state == "trivial";
  int wanted = 0;
  if (!trivial) {
    std::size_t used = 0;
    try {
      wanted = std::stoi(req.state, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != req.state.size() || wanted < 1) {
      throw UsageError("--state must be a positive integer or 'trivial'");
    }
  }
  for (const Eigenpair& p : pairs) {
    if (trivial ? p.trivial : p.state == wanted) return p;
  }
  std::ostringstream available;
  for (const Eigenpair& p : pairs) {
    available << ' ' << (p.trivial ? std::string("trivial") : std::to_string(p.state)) << '('
              << format_number(p.beta) << ')';
  }
  throw std::runtime_error("state " + req.state + " not found for m=" + std::to_string(req.m) +
                           " " + std::string(to_string(req.parity)) +
                           "; available:" + available.str());
}

int run_wavefn(const RunConfig& cfg, const StateRequest& req, int samples,
               const std::vector<double>& thetas, const std::string& normalization,
               const std::string& samples_out) {
  const Eigenpair pair = select_state(cfg, req);
  Eigenfunction psi = from_series(pair.series, pair.beta, pair.state);
  if (parse_normalization(normalization) == Normalization::unit_weighted) {
    psi = normalize(psi, cfg.alpha);
  }

  std::vector<double> grid = thetas;
  if (grid.empty()) {
    for (int j = 0; j < samples; ++j) grid.push_back(2.0 * std::numbers::pi * j / samples);
  }
  const auto values = sample(psi, grid);
  const EigenfunctionRecord record = make_record(cfg.alpha, psi);

  if (cfg.format == "csv") {
    std::ostringstream out;
    write_csv(out, record);
    emit(cfg, out.str());
  } else {
    json points = json::array();
    for (const ThetaValue& v : values) points.push_back({{"theta", v.theta}, {"psi", v.psi}});
    emit(cfg, dump(json{{"eigenfunction", record},
                        {"residual", pair.residual},
                        {"converged", pair.converged},
                        {"samples", points}}));
  }
  if (!samples_out.empty()) {
    std::ofstream file(samples_out);
    if (!file) throw std::runtime_error("cannot write " + samples_out);
    file << "theta,psi\n";
    for (const ThetaValue& v : values) {
      file << format_number(v.theta) << ',' << format_number(v.psi) << '\n';
    }
  }
  return kOk;
}

// --- compare ---------------------------------------------------------------

struct MethodResult {
  std::string method;
  double beta = 0.0;
  std::vector<ThetaValue> samples;  // max |psi| = 1
};

std::vector<ThetaValue> unit_peak(std::vector<ThetaValue> samples) {
  double peak = 0.0;
  for (const ThetaValue& s : samples) peak = std::max(peak, std::abs(s.psi));
  if (peak > 0.0) {
    for (ThetaValue& s : samples) s.psi /= peak;
  }
  return samples;
}

int run_compare(const RunConfig& cfg, const StateRequest& req, std::vector<std::string> methods) {
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
  for (const std::string& m : methods) {
    if (m != "fourier" && m != "rk" && m != "fd") throw UsageError("unknown method '" + m + "'");
  }
  if (methods.size() < 2) throw UsageError("--methods needs at least two distinct methods");

  const Eigenpair pair = select_state(cfg, req);
  if (pair.trivial) throw UsageError("compare needs a nontrivial state");
  const Eigenfunction psi = from_series(pair.series, pair.beta, pair.state);
  const OracleConfig oracle = cfg.oracle();

  // The FD grid fixes the angles every method is sampled at.
  const int grid = cfg.fd_grid;
  std::vector<double> thetas;
  for (int j = 0; j < grid; j += grid / 64) thetas.push_back(2.0 * std::numbers::pi * j / grid);

  std::vector<MethodResult> results;
  for (const std::string& method : methods) {
    MethodResult r{method, 0.0, {}};
    try {
      if (method == "fourier") {
        r.beta = pair.beta;
        r.samples = sample(psi, thetas);
      } else if (method == "rk") {
        const double half = 0.05;
        r.beta = rk_find_eigenvalue(cfg.alpha, req.m, req.parity, pair.beta - half,
                                    pair.beta + half, oracle);
        r.samples = rk_sample(cfg.alpha, req.m, r.beta, req.parity, thetas, oracle);
      } else {
        const int skip = (req.m == 0 && req.parity == Parity::even) ? 1 : 0;
        const int k = pair.state + skip;
        const auto fns = fd_eigenfunctions(cfg.alpha, req.m, grid, req.parity, k);
        const auto spectrum = fd_spectrum(cfg.alpha, req.m, grid, 2 * k + 2, true);
        const FdEigenfunction& fn = fns.at(static_cast<std::size_t>(k - 1));
        double best = spectrum.front().extrapolated;
        for (const FdEigenvalue& e : spectrum) {
          if (e.parity == req.parity && std::abs(e.beta - fn.beta) < std::abs(best - fn.beta)) {
            best = e.extrapolated;
          }
        }
        r.beta = best;
        for (std::size_t i = 0; i < thetas.size(); ++i) {
          r.samples.push_back(fn.samples.at(i * static_cast<std::size_t>(grid / 64)));
        }
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(method + ": " + e.what());
    }
    r.samples = unit_peak(std::move(r.samples));
    results.push_back(std::move(r));
  }

  constexpr double kFunctionTolerance = 1e-3;
  bool pass = true;
  json pairs = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (std::size_t j = i + 1; j < results.size(); ++j) {
      const bool fd = results[i].method == "fd" || results[j].method == "fd";
      const double tolerance = fd ? 1e-4 : 5e-6;
      const double delta = std::abs(results[i].beta - results[j].beta);
      const ScaledComparison fit = compare_scaled(results[i].samples, results[j].samples);
      const bool ok = delta < tolerance && fit.max_abs_deviation < kFunctionTolerance;
      pass = pass && ok;
      pairs.push_back({{"a", results[i].method},
                       {"b", results[j].method},
                       {"delta_beta", delta},
                       {"beta_tolerance", tolerance},
                       {"max_deviation", fit.max_abs_deviation},
                       {"deviation_tolerance", kFunctionTolerance},
                       {"pass", ok}});
    }
  }
  json methods_json = json::array();
  for (const MethodResult& r : results) {
    methods_json.push_back({{"method", r.method}, {"beta", r.beta}});
  }
  emit(cfg, dump(json{{"alpha", cfg.alpha},
                      {"m", req.m},
                      {"parity", std::string(to_string(req.parity))},
                      {"state", pair.state},
                      {"order", cfg.order},
                      {"methods", methods_json},
                      {"pairs", pairs},
                      {"pass", pass}}));
  return pass ? kOk : kFailure;
}

// --- embed -----------------------------------------------------------------

int run_embed(const RunConfig& cfg, int theta_steps, int phi_steps) {
  if (theta_steps < 1 || phi_steps < 1) throw UsageError("mesh step counts must be positive");
  const TorusShape shape = TorusShape::from_alpha(cfg.alpha, 1.0);
  std::ostringstream out;
  json mesh = json::array();
  if (cfg.format == "csv") out << "theta,phi,x,y,z\n";
  for (int i = 0; i < theta_steps; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / theta_steps;
    for (int j = 0; j < phi_steps; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / phi_steps;
      const Point3 p = embed(theta, phi, shape);
      if (cfg.format == "csv") {
        out << format_number(theta) << ',' << format_number(phi) << ',' << format_number(p.x)
            << ',' << format_number(p.y) << ',' << format_number(p.z) << '\n';
      } else {
        mesh.push_back({{"theta", theta}, {"phi", phi}, {"x", p.x}, {"y", p.y}, {"z", p.z}});
      }
    }
  }
  if (cfg.format == "csv") {
    emit(cfg, out.str());
  } else {
    emit(cfg, dump(json{{"alpha", cfg.alpha},
                        {"minor_radius", shape.minor_radius()},
                        {"major_radius", shape.major_radius()},
                        {"points", mesh}}));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Particle on a torus: Fourier-recursion spectra and checks"};
  app.require_subcommand(1);

  RunConfig cfg;
  int table = 0;
  StateRequest req;
  int samples = 64;
  std::vector<double> thetas;
  std::string normalization = "unit-weighted";
  std::string samples_out;
  std::vector<std::string> methods{"fourier", "rk"};
  int theta_steps = 32;
  int phi_steps = 64;
  const std::vector<std::string> data_formats{"json", "csv"};

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues per (m, parity)");
  add_common(spectrum, cfg);
  spectrum->add_option("--parity", cfg.parity, "even, odd or both")
      ->check(CLI::IsMember({"even", "odd", "both"}));
  spectrum->add_option("--format", cfg.format)->check(CLI::IsMember(data_formats));

  auto* repro = app.add_subcommand("repro", "recompute a published table");
  add_common(repro, cfg, false);
  repro->add_option("--table", table, "table number 1..5")->required()->check(CLI::Range(1, 5));
  repro->add_option("--format", cfg.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  repro->add_option("--data", cfg.data, "golden table file");

  auto* wavefn = app.add_subcommand("wavefn", "export one eigenfunction");
  add_common(wavefn, cfg, false);
  wavefn->add_option("--m", req.m, "azimuthal number")->check(CLI::NonNegativeNumber);
  wavefn->add_option("--parity", cfg.parity, "even or odd")
      ->check(CLI::IsMember({"even", "odd"}));
  wavefn->add_option("--state", req.state, "1-based state index or 'trivial'");
  wavefn->add_option("--samples", samples, "uniform samples on [0, 2 pi)")
      ->check(CLI::Range(0, 1 << 20));
  wavefn->add_option("--theta", thetas, "explicit sample angles in radians")->delimiter(',');
  wavefn->add_option("--normalization", normalization)
      ->check(CLI::IsMember({"none", "unit-weighted"}));
  wavefn->add_option("--samples-out", samples_out, "theta,psi CSV of the samples");
  wavefn->add_option("--format", cfg.format)->check(CLI::IsMember(data_formats));

  auto* compare = app.add_subcommand("compare", "cross-check one state between methods");
  add_common(compare, cfg, false);
  compare->add_option("--m", req.m, "azimuthal number")->check(CLI::NonNegativeNumber);
  compare->add_option("--parity", cfg.parity, "even or odd")
      ->check(CLI::IsMember({"even", "odd"}));
  compare->add_option("--state", req.state, "1-based state index");
  compare->add_option("--methods", methods, "two or more of fourier, rk, fd")->delimiter(',');

  auto* mesh = app.add_subcommand("embed", "(theta, phi, x, y, z) mesh with a = 1");
  mesh->add_option("--alpha", cfg.alpha, "aspect ratio a/R in (0, 1)");
  mesh->add_option("--theta-steps", theta_steps);
  mesh->add_option("--phi-steps", phi_steps);
  mesh->add_option("--format", cfg.format)->check(CLI::IsMember(data_formats));
  mesh->add_option("--out", cfg.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (repro->parsed() && cfg.format == "json" && repro->count("--format") == 0) {
      cfg.format = "text";
    }
    if (wavefn->parsed() || compare->parsed()) {
      if (cfg.parity == "both") cfg.parity = "even";
      req.parity = parse_parity(cfg.parity);
      cfg.m = {req.m};
    }
    cfg.validate();
    if (spectrum->parsed()) return run_spectrum(cfg);
    if (repro->parsed()) return run_repro(cfg, table);
    if (wavefn->parsed()) {
      return run_wavefn(cfg, req, samples, thetas, normalization, samples_out);
    }
    if (compare->parsed()) return run_compare(cfg, req, methods);
    return run_embed(cfg, theta_steps, phi_steps);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
