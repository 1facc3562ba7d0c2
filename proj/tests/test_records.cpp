#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "torus/records.hpp"

using namespace torus;
using json = nlohmann::ordered_json;

namespace {

SpectrumRecord sample_spectrum() {
  return {0.5, 1, Parity::odd, 10,
          {{0.0, true, 0.0, true}, {1.0 / 3.0, false, 2.5e-7, true}, {9.87654321012, false, 0.02, false}}};
}

EigenfunctionRecord sample_function() {
  return {0.5, 2, Parity::even, 3, 7.123456789012, {0.1, 0.0, -1.0 / 7.0},
          {0.0, 0.25, 0.0}, Normalization::unit_weighted};
}

}  // namespace

TEST_CASE("JSON round trip is exact") {
  const SpectrumRecord s = sample_spectrum();
  const json js = s;
  CHECK(json::parse(js.dump()).get<SpectrumRecord>() == s);
  CHECK(js.at("eigenvalues").at(1).contains("residual"));

  const EigenfunctionRecord e = sample_function();
  const json je = e;
  CHECK(json::parse(je.dump()).get<EigenfunctionRecord>() == e);
  CHECK(je.at("normalization") == "unit-weighted");
  CHECK(je.at("lambda") == 3);
}

TEST_CASE("CSV round trip to nine significant digits") {
  const SpectrumRecord s = sample_spectrum();
  std::stringstream out;
  write_csv(out, {s, s});
  const auto back = read_spectrum_csv(out);
  REQUIRE(back.size() == 1u);  // identical keys merge
  CHECK(back[0].eigenvalues.size() == 6u);
  CHECK(back[0].eigenvalues[1].beta == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(back[0].eigenvalues[2].converged == false);

  std::stringstream text;
  write_csv(text, {s});
  std::stringstream again;
  write_csv(again, read_spectrum_csv(text));
  std::stringstream first;
  write_csv(first, {s});
  CHECK(again.str() == first.str());

  const EigenfunctionRecord e = sample_function();
  std::stringstream ef;
  write_csv(ef, e);
  const auto eb = read_eigenfunction_csv(ef);
  CHECK(eb.lambda == 3);
  CHECK(eb.a.size() == 3u);
  CHECK(eb.a[2] == doctest::Approx(-1.0 / 7.0).epsilon(1e-9));
  CHECK(eb.normalization == Normalization::unit_weighted);
}

TEST_CASE("CSV format and errors") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(0.0) == "0");
  std::stringstream bad("beta\n1\n");
  CHECK_THROWS_AS(read_spectrum_csv(bad), std::runtime_error);
  std::stringstream short_row("alpha,m,parity,order,beta,trivial,residual,converged\n0.5,1\n");
  CHECK_THROWS_AS(read_spectrum_csv(short_row), std::runtime_error);
  std::stringstream empty("alpha,m,parity,lambda,beta,normalization,k,a,b\n");
  CHECK_THROWS_AS(read_eigenfunction_csv(empty), std::runtime_error);
  EigenfunctionRecord uneven = sample_function();
  uneven.b.pop_back();
  std::stringstream sink;
  CHECK_THROWS_AS(write_csv(sink, uneven), std::invalid_argument);
}
