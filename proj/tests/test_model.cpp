#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "torus/model.hpp"

using namespace torus;
using std::numbers::pi;

TEST_CASE("metric factor at the cardinal angles") {
  const auto shape = TorusShape::from_alpha(0.5);
  CHECK(metric_factor(0.0, shape) == doctest::Approx(1.0));
  CHECK(metric_factor(pi / 2, shape) == doctest::Approx(1.5));
  CHECK(metric_factor(-pi / 2, shape) == doctest::Approx(0.5));
}

TEST_CASE("metric factor is symmetric about pi/2 and averages to one") {
  const int n = 400;
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * pi * j / n;
    CHECK(metric_factor(t, 0.7) == doctest::Approx(metric_factor(pi - t, 0.7)).epsilon(1e-14));
    const double w = metric_factor(t, 0.7);
    CHECK(w >= 0.3 - 1e-15);
    CHECK(w <= 1.7 + 1e-15);
    sum += w;
  }
  CHECK(std::abs(sum * 2.0 * pi / n - 2.0 * pi) < 1e-12);
}

TEST_CASE("embedding") {
  const TorusShape shape(1.0, 2.0);
  const Point3 p0 = embed(0.0, 0.0, shape);
  CHECK(p0.x == doctest::Approx(2.0));
  CHECK(p0.y == doctest::Approx(0.0));
  CHECK(p0.z == doctest::Approx(1.0));
  const Point3 p1 = embed(pi / 2, 0.0, shape);
  CHECK(p1.x == doctest::Approx(3.0));
  CHECK(std::abs(p1.z) < 1e-15);
  const Point3 p2 = embed(pi / 2, pi / 2, shape);
  CHECK(std::abs(p2.x) < 1e-15);
  CHECK(p2.y == doctest::Approx(3.0));

  // Distance from the core circle is a.
  for (double t = -3.0; t < 3.0; t += 0.37) {
    for (double f = 0.0; f < 6.0; f += 0.71) {
      const Point3 p = embed(t, f, shape);
      const double rho = std::hypot(p.x, p.y);
      CHECK(std::hypot(rho - 2.0, p.z) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(TorusShape(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusShape(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusShape(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusShape(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusShape::from_alpha(1.0), std::invalid_argument);
  CHECK_THROWS_AS(require_alpha(0.0), std::invalid_argument);
  const TorusShape s(0.5, 2.0);
  CHECK(s.alpha() == 0.25);
  CHECK(TorusShape::from_alpha(0.5, 1.0).major_radius() == 2.0);
}

TEST_CASE("beta to energy") {
  CHECK(beta_to_energy({0.0}, 1.0) == 0.0);
  CHECK(beta_to_energy({1.122288}, 1.0) == doctest::Approx(0.561144));
  CHECK(beta_to_energy({4.051724}, 0.5) == doctest::Approx(8.103448));
  CHECK_THROWS_AS(beta_to_energy({1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_to_energy({1.0}, -1.0), std::invalid_argument);
}

TEST_CASE("parity names") {
  CHECK(parse_parity("even") == Parity::even);
  CHECK(parse_parity("odd") == Parity::odd);
  CHECK(to_string(Parity::odd) == "odd");
  CHECK_THROWS_AS(parse_parity("both"), std::invalid_argument);
}
