#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "torus/repro.hpp"

using namespace torus;

namespace {

const nlohmann::ordered_json& golden() {
  static const auto data = load_paper_tables(TORUS_TEST_DATA_DIR "/paper_tables.json");
  return data;
}

}  // namespace

TEST_CASE("table cells") {
  CHECK(parse_cell(".247927").value() == doctest::Approx(0.247927));
  CHECK(parse_cell("-.105468").value() == doctest::Approx(-0.105468));
  CHECK_FALSE(parse_cell("*******").has_value());
  CHECK_THROWS(parse_cell("1.2x"));
}

TEST_CASE("eigenvalue tables reproduce") {
  for (int t : {1, 2, 3}) {
    const TableReport r = reproduce_table(t, golden());
    CHECK(r.pass);
    CHECK(r.rows.size() == 12u);
    const auto absent = std::count_if(r.rows.begin(), r.rows.end(), [](const ReportRow& row) {
      return !row.paper.has_value();
    });
    CHECK(absent == 1);
  }
}

TEST_CASE("sample table reproduces") {
  const TableReport r = reproduce_table(4, golden());
  CHECK(r.pass);
  CHECK(r.rows.size() == 10u);
}

TEST_CASE("coefficient table reports the printed cos 2 sign of psi_10") {
  const TableReport r = reproduce_table(5, golden());
  CHECK_FALSE(r.pass);
  for (const ReportRow& row : r.rows) {
    const bool known = row.label == "psi_10 cos2/1" || row.label == "psi_10 unprinted/smallest" ||
                       row.label == "psi_22 unprinted/smallest";
    CHECK_MESSAGE(row.pass != known, row.label);
  }
}

TEST_CASE("report rendering and errors") {
  const TableReport r = reproduce_table(4, golden());
  std::ostringstream out;
  render(out, r);
  CHECK(out.str().find("table 4: PASS") != std::string::npos);
  const nlohmann::ordered_json j = r;
  CHECK(j.at("rows").size() == 10u);
  CHECK(j.at("tolerances").contains("sample_abs"));
  CHECK_THROWS_AS(reproduce_table(6, golden()), std::invalid_argument);
  CHECK_THROWS_AS(load_paper_tables("/nonexistent/tables.json"), std::runtime_error);
}
