#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "torus/recursion.hpp"

using namespace torus;
using cd = std::complex<double>;

namespace {

bool close(cd a, cd b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("three-term row at n = 0") {
  const double alpha = 0.5, beta = 1.7;
  const RecursionRow row = three_term_row(0, alpha, beta);
  CHECK(row.at(-2) == 0.0);
  CHECK(row.at(2) == 0.0);
  CHECK(close(row.complex_multiplier(1), cd(-beta, 0.0)));
  CHECK(close(row.complex_multiplier(0), cd(0.0, 2.0 / alpha * beta)));
  CHECK(close(row.complex_multiplier(-1), cd(beta, 0.0)));
}

TEST_CASE("the constant solves every row at beta = 0, m = 0") {
  // Only rows -1, 0, 1 touch c_0.
  CHECK(three_term_row(-1, 0.5, 0.0).at(1) == 0.0);
  CHECK(three_term_row(0, 0.5, 0.0).at(0) == 0.0);
  CHECK(three_term_row(1, 0.5, 0.0).at(-1) == 0.0);
  const CoefficientSeries one({0, Parity::even}, {1.0, 0.0, 0.0, 0.0});
  CHECK(residual(one, 0.5, 0, 0.0, 64).max_abs < 1e-14);
}

TEST_CASE("three-term row is diagonal in the flat limit") {
  const double alpha = 1e-8;
  const RecursionRow row = three_term_row(3, alpha, 9.0 + 1e-3);
  CHECK(std::abs(row.at(0)) > 1e4 * std::abs(row.at(1)));
  CHECK(std::abs(three_term_row(3, alpha, 9.0).at(0)) == 0.0);
}

TEST_CASE("five-term rows carry five entries only when m > 0") {
  const RecursionRow r0 = five_term_row(4, 0.5, 0, 3.0);
  const RecursionRow r2 = five_term_row(4, 0.5, 2, 3.0);
  CHECK(r0.at(0) != r2.at(0));
  CHECK(r0.at(2) == r2.at(2));
  CHECK(r0.at(-2) == r2.at(-2));
}

TEST_CASE("series parity relations") {
  const CoefficientSeries even({0, Parity::even}, {0.3, -0.2, 0.1});
  for (int n = 0; n <= 2; ++n) {
    const double s = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(close(even.c(n), s * even.c(-n)));
  }
  const CoefficientSeries odd({1, Parity::odd}, {0.0, 0.4, 0.3, -0.1});
  CHECK(odd.c(0) == cd(0.0, 0.0));
  for (int n = 1; n <= 3; ++n) {
    const double s = n % 2 == 0 ? -1.0 : 1.0;
    CHECK(close(odd.c(n), s * odd.c(-n)));
  }
  CHECK(odd.c(7) == cd(0.0, 0.0));
  CHECK_THROWS_AS(CoefficientSeries({0, Parity::odd}, {1.0, 0.5}), std::invalid_argument);
  CHECK(even.two_sided().size() == 5u);
}

TEST_CASE("reflection theta -> pi - theta") {
  const CoefficientSeries even({0, Parity::even}, {0.3, -0.2, 0.1});
  const auto c = even.two_sided();
  const auto r = reflect(c);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(close(r[i], c[i]));
  const CoefficientSeries odd({0, Parity::odd}, {0.0, 0.2, 0.1});
  const auto co = odd.two_sided();
  const auto ro = reflect(co);
  for (std::size_t i = 0; i < co.size(); ++i) CHECK(close(ro[i], -co[i]));
}

TEST_CASE("propagation seeds and errors") {
  const std::vector<double> one{1.0};
  const std::vector<double> two{1.0, 0.5};
  const auto s3 = propagate(one, {0, Parity::even}, 0.5, 1.2, 6, Stencil::three_term);
  CHECK(s3.d(1) == doctest::Approx(1.0 / 0.5));
  const auto zero = propagate(one, {0, Parity::even}, 0.5, 0.0, 6, Stencil::three_term);
  CHECK(zero.d(1) == 0.0);
  CHECK_THROWS_AS(propagate(two, {0, Parity::even}, 0.5, 1.2, 6, Stencil::three_term),
                  std::invalid_argument);
  CHECK_THROWS_AS(propagate(one, {2, Parity::even}, 0.5, 1.2, 6, Stencil::five_term),
                  std::invalid_argument);
  CHECK_THROWS_AS(propagate(one, {1, Parity::even}, 0.5, 1.2, 6, Stencil::three_term),
                  std::invalid_argument);
  // Leading divisor of row 0 vanishes at beta = 2.
  CHECK_THROWS_AS(propagate(two, {1, Parity::even}, 0.5, 2.0, 6, Stencil::five_term),
                  RecursionPole);
  CHECK(near_recursion_pole(6.0 + 1e-10, 4, 1e-8));
  CHECK_FALSE(near_recursion_pole(6.5, 4, 1e-8));
  CHECK(five_term_divisor_sign({1, Parity::even}, 0.5, 2.0, 6) == 0.0);
}

TEST_CASE("five-term march agrees with three-term march at m = 0") {
  const double alpha = 0.5, beta = 1.3;
  const std::vector<double> one{1.0};
  const auto three = propagate(one, {0, Parity::even}, alpha, beta, 8, Stencil::three_term);
  const std::vector<double> seeds{three.d(0), three.d(1)};
  const auto five = propagate(seeds, {0, Parity::even}, alpha, beta, 8, Stencil::five_term);
  for (int n = 0; n <= 8; ++n) {
    CHECK(five.d(n) * std::exp(five.log_scale()) ==
          doctest::Approx(three.d(n) * std::exp(three.log_scale())).epsilon(1e-9));
  }
}

TEST_CASE("rows annihilate the coefficients they generate") {
  for (Parity p : {Parity::even, Parity::odd}) {
    const std::vector<double> seeds{0.7, -0.3};
    const ModeSpec mode{3, p};
    const auto s = propagate(seeds, mode, 0.4, 5.1, 12, Stencil::five_term);
    for (int n = (p == Parity::even ? 0 : 1); n <= 10; ++n) {
      const RecursionRow row = five_term_row(n, 0.4, 3, 5.1);
      double sum = 0.0, scale = 0.0;
      for (int k = -2; k <= 2; ++k) {
        sum += row.at(k) * s.d(n + k);
        scale += std::abs(row.at(k) * s.d(n + k));
      }
      CHECK(std::abs(sum) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("residual validation") {
  const CoefficientSeries s({0, Parity::even}, std::vector<double>(20, 0.1));
  CHECK_THROWS_AS(residual(s, 0.5, 0, 1.0, 64), std::invalid_argument);
  CHECK(residual(s, 0.5, 0, 1.0, 80).max_psi > 0.0);
}
