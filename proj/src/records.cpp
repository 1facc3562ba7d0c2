#include "torus/records.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace torus {

namespace {

constexpr const char* kSpectrumHeader = "alpha,m,parity,order,beta,trivial,residual,converged";
constexpr const char* kEigenfunctionHeader = "alpha,m,parity,lambda,beta,normalization,k,a,b";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double to_double(const std::string& text) {
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size()) throw std::runtime_error("bad number '" + text + "'");
  return value;
}

int to_int(const std::string& text) {
  std::size_t used = 0;
  const int value = std::stoi(text, &used);
  if (used != text.size()) throw std::runtime_error("bad integer '" + text + "'");
  return value;
}

bool to_bool(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw std::runtime_error("bad flag '" + text + "'");
}

std::string read_header(std::istream& in, const char* expected) {
  std::string line;
  if (!std::getline(in, line) || line != expected) {
    throw std::runtime_error("unexpected CSV header '" + line + "'");
  }
  return line;
}

}  // namespace

SpectrumRecord make_record(double alpha, ModeSpec mode, int order,
                           const std::vector<Eigenpair>& pairs) {
  SpectrumRecord record{alpha, mode.m, mode.parity, order, {}};
  for (const Eigenpair& p : pairs) {
    if (!(p.mode == mode)) continue;
    record.eigenvalues.push_back({p.beta, p.trivial, p.residual, p.converged});
  }
  return record;
}

EigenfunctionRecord make_record(double alpha, const Eigenfunction& psi) {
  return {alpha, psi.mode.m, psi.mode.parity, psi.state, psi.beta,
          psi.a, psi.b, psi.normalization};
}

void to_json(nlohmann::ordered_json& j, const EigenvalueEntry& e) {
  j = nlohmann::ordered_json{{"beta", e.beta},
                             {"trivial", e.trivial},
                             {"residual", e.residual},
                             {"converged", e.converged}};
}

void from_json(const nlohmann::ordered_json& j, EigenvalueEntry& e) {
  j.at("beta").get_to(e.beta);
  j.at("trivial").get_to(e.trivial);
  j.at("residual").get_to(e.residual);
  j.at("converged").get_to(e.converged);
}

void to_json(nlohmann::ordered_json& j, const SpectrumRecord& r) {
  j = nlohmann::ordered_json{{"alpha", r.alpha},
                             {"m", r.m},
                             {"parity", std::string(to_string(r.parity))},
                             {"order", r.order},
                             {"eigenvalues", r.eigenvalues}};
}

void from_json(const nlohmann::ordered_json& j, SpectrumRecord& r) {
  j.at("alpha").get_to(r.alpha);
  j.at("m").get_to(r.m);
  r.parity = parse_parity(j.at("parity").get<std::string>());
  j.at("order").get_to(r.order);
  r.eigenvalues = j.at("eigenvalues").get<std::vector<EigenvalueEntry>>();
}

void to_json(nlohmann::ordered_json& j, const EigenfunctionRecord& r) {
  j = nlohmann::ordered_json{{"alpha", r.alpha},
                             {"m", r.m},
                             {"parity", std::string(to_string(r.parity))},
                             {"lambda", r.lambda},
                             {"beta", r.beta},
                             {"a", r.a},
                             {"b", r.b},
                             {"normalization", std::string(to_string(r.normalization))}};
}

void from_json(const nlohmann::ordered_json& j, EigenfunctionRecord& r) {
  j.at("alpha").get_to(r.alpha);
  j.at("m").get_to(r.m);
  r.parity = parse_parity(j.at("parity").get<std::string>());
  j.at("lambda").get_to(r.lambda);
  j.at("beta").get_to(r.beta);
  r.a = j.at("a").get<std::vector<double>>();
  r.b = j.at("b").get<std::vector<double>>();
  r.normalization = parse_normalization(j.at("normalization").get<std::string>());
}

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

void write_csv(std::ostream& out, const std::vector<SpectrumRecord>& records) {
  out << kSpectrumHeader << '\n';
  for (const SpectrumRecord& r : records) {
    for (const EigenvalueEntry& e : r.eigenvalues) {
      out << format_number(r.alpha) << ',' << r.m << ',' << to_string(r.parity) << ','
          << r.order << ',' << format_number(e.beta) << ',' << (e.trivial ? "true" : "false")
          << ',' << format_number(e.residual) << ',' << (e.converged ? "true" : "false")
          << '\n';
    }
  }
}

void write_csv(std::ostream& out, const EigenfunctionRecord& record) {
  if (record.a.size() != record.b.size()) {
    throw std::invalid_argument("eigenfunction record has unequal a and b");
  }
  out << kEigenfunctionHeader << '\n';
  for (std::size_t k = 0; k < record.a.size(); ++k) {
    out << format_number(record.alpha) << ',' << record.m << ','
        << to_string(record.parity) << ',' << record.lambda << ','
        << format_number(record.beta) << ',' << to_string(record.normalization) << ','
        << k << ',' << format_number(record.a[k]) << ',' << format_number(record.b[k])
        << '\n';
  }
}

std::vector<SpectrumRecord> read_spectrum_csv(std::istream& in) {
  read_header(in, kSpectrumHeader);
  std::vector<SpectrumRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 8) throw std::runtime_error("spectrum row needs 8 fields: " + line);
    SpectrumRecord key{to_double(f[0]), to_int(f[1]), parse_parity(f[2]), to_int(f[3]), {}};
    if (records.empty() || records.back().alpha != key.alpha || records.back().m != key.m ||
        records.back().parity != key.parity || records.back().order != key.order) {
      records.push_back(key);
    }
    records.back().eigenvalues.push_back(
        {to_double(f[4]), to_bool(f[5]), to_double(f[6]), to_bool(f[7])});
  }
  return records;
}

EigenfunctionRecord read_eigenfunction_csv(std::istream& in) {
  read_header(in, kEigenfunctionHeader);
  EigenfunctionRecord record;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 9) throw std::runtime_error("eigenfunction row needs 9 fields: " + line);
    if (first) {
      record.alpha = to_double(f[0]);
      record.m = to_int(f[1]);
      record.parity = parse_parity(f[2]);
      record.lambda = to_int(f[3]);
      record.beta = to_double(f[4]);
      record.normalization = parse_normalization(f[5]);
      first = false;
    }
    if (to_int(f[6]) != static_cast<int>(record.a.size())) {
      throw std::runtime_error("eigenfunction rows out of order: " + line);
    }
    record.a.push_back(to_double(f[7]));
    record.b.push_back(to_double(f[8]));
  }
  if (first) throw std::runtime_error("eigenfunction CSV has no rows");
  return record;
}

}  // namespace torus
