#pragma once

// Export records for spectra and eigenfunctions (JSON and CSV).

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "torus/eigensolver.hpp"
#include "torus/model.hpp"
#include "torus/wavefunction.hpp"

namespace torus {

struct EigenvalueEntry {
  double beta = 0.0;
  bool trivial = false;
  double residual = 0.0;
  bool converged = false;

  friend bool operator==(const EigenvalueEntry&, const EigenvalueEntry&) = default;
};

struct SpectrumRecord {
  double alpha = 0.5;
  int m = 0;
  Parity parity = Parity::even;
  int order = 10;
  std::vector<EigenvalueEntry> eigenvalues;

  friend bool operator==(const SpectrumRecord&, const SpectrumRecord&) = default;
};

struct EigenfunctionRecord {
  double alpha = 0.5;
  int m = 0;
  Parity parity = Parity::even;
  int lambda = 0;  // 0 for the trivial mode
  double beta = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  Normalization normalization = Normalization::none;

  friend bool operator==(const EigenfunctionRecord&, const EigenfunctionRecord&) = default;
};

SpectrumRecord make_record(double alpha, ModeSpec mode, int order,
                           const std::vector<Eigenpair>& pairs);
EigenfunctionRecord make_record(double alpha, const Eigenfunction& psi);

void to_json(nlohmann::ordered_json& j, const EigenvalueEntry& e);
void from_json(const nlohmann::ordered_json& j, EigenvalueEntry& e);
void to_json(nlohmann::ordered_json& j, const SpectrumRecord& r);
void from_json(const nlohmann::ordered_json& j, SpectrumRecord& r);
void to_json(nlohmann::ordered_json& j, const EigenfunctionRecord& r);
void from_json(const nlohmann::ordered_json& j, EigenfunctionRecord& r);

// 9 significant digits, "%.9g".
std::string format_number(double value);

// One row per eigenvalue, header first. Several records may share a file.
void write_csv(std::ostream& out, const std::vector<SpectrumRecord>& records);
// One row per k.
void write_csv(std::ostream& out, const EigenfunctionRecord& record);

// Throw std::runtime_error on a malformed header or row.
std::vector<SpectrumRecord> read_spectrum_csv(std::istream& in);
EigenfunctionRecord read_eigenfunction_csv(std::istream& in);

}  // namespace torus
