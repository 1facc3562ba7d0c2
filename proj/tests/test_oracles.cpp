#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "torus/eigensolver.hpp"
#include "torus/oracles.hpp"

using namespace torus;
using std::numbers::pi;

TEST_CASE("shooting mismatch") {
  CHECK(std::abs(rk_mismatch(0.5, 0, 0.0, Parity::even)) < 1e-12);
  CHECK(std::abs(rk_mismatch(0.5, 1, 0.249368, Parity::even)) < 1e-6);
  CHECK(std::abs(rk_mismatch(0.5, 0, 1.122286, Parity::even)) < 1e-5);
  CHECK(std::abs(rk_mismatch(0.5, 0, 1.3, Parity::even)) > 1e-2);
}

TEST_CASE("shooting eigenvalues against the DE columns") {
  CHECK(std::abs(rk_find_eigenvalue(0.5, 0, Parity::even, 1.0, 1.3) - 1.122286) < 5e-6);
  CHECK(std::abs(rk_find_eigenvalue(0.5, 1, Parity::even, 4.3, 4.6) - 4.476693) < 5e-6);
  CHECK(std::abs(rk_find_eigenvalue(0.5, 5, Parity::even, 15.0, 15.3) - 15.164615) < 5e-6);
}

TEST_CASE("shooting errors") {
  CHECK_THROWS_AS(rk_find_eigenvalue(0.5, 0, Parity::even, 1.5, 2.0), BracketError);
  CHECK_THROWS_AS(rk_find_eigenvalue(0.5, 0, Parity::even, 2.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(rk_mismatch(0.5, 0, 1.0, Parity::even, {.rk_steps = 10}),
                  std::invalid_argument);
  CHECK_THROWS_AS(rk_mismatch(0.5, -1, 1.0, Parity::even), std::invalid_argument);
}

TEST_CASE("RK4 step halving is fourth order") {
  double beta[3];
  const int steps[3] = {512, 1024, 2048};
  for (int k = 0; k < 3; ++k) {
    beta[k] = rk_find_eigenvalue(0.5, 0, Parity::even, 1.0, 1.3, {.rk_steps = steps[k]});
  }
  const double first = std::abs(beta[1] - beta[0]);
  const double second = std::abs(beta[2] - beta[1]);
  REQUIRE(second > 0.0);
  CHECK(first / second >= 8.0);
}

TEST_CASE("shooting trajectories") {
  const double beta = rk_find_eigenvalue(0.5, 1, Parity::even, 1.6, 1.7);
  std::vector<double> thetas;
  for (double t = 0.1; t < 3.0; t += 0.3) {
    thetas.push_back(pi / 2 - t);
    thetas.push_back(pi / 2 + t);
  }
  const auto v = rk_sample(0.5, 1, beta, Parity::even, thetas);
  for (std::size_t i = 0; i < v.size(); i += 2) {
    CHECK(std::abs(v[i].psi - v[i + 1].psi) < 1e-5);
  }
  const double odd_beta = rk_find_eigenvalue(0.5, 0, Parity::odd, 0.9, 1.05);
  const auto o = rk_sample(0.5, 0, odd_beta, Parity::odd, {-pi / 2, pi / 2 - 0.4, pi / 2 + 0.4});
  CHECK(o[0].psi == 0.0);
  CHECK(std::abs(o[1].psi + o[2].psi) < 1e-5);
  CHECK(rk_spectrum(0.5, 0, Parity::even, 10.0, 0.05).size() == 3u);
}

TEST_CASE("finite differences") {
  const auto low = fd_spectrum(0.5, 0, 1024, 3, true);
  REQUIRE(low.size() == 3u);
  CHECK(std::abs(low[0].beta) < 1e-10);
  // The odd ground state sits below the first even one.
  CHECK(*low[1].parity == Parity::odd);
  CHECK(std::abs(low[1].beta - 0.976731) < 1e-4);
  CHECK(*low[2].parity == Parity::even);
  CHECK(std::abs(low[2].beta - 1.12229) < 1e-4);

  const auto flat = fd_spectrum(1e-3, 0, 1024, 5);
  const double expected[] = {0.0, 1.0, 1.0, 4.0, 4.0};
  for (int k = 0; k < 5; ++k) CHECK(std::abs(flat[static_cast<std::size_t>(k)].beta - expected[k]) < 1e-2);

  CHECK_THROWS_AS(fd_spectrum(0.5, 0, 63, 3), std::invalid_argument);
  CHECK_THROWS_AS(fd_spectrum(0.5, 0, 4096, 3), std::invalid_argument);
}

TEST_CASE("finite differences converge at second order") {
  const double exact = rk_find_eigenvalue(0.5, 0, Parity::even, 1.0, 1.3);
  const double coarse = fd_spectrum(0.5, 0, 128, 3)[2].beta;
  const double fine = fd_spectrum(0.5, 0, 256, 3)[2].beta;
  const double finer = fd_spectrum(0.5, 0, 512, 3)[2].beta;
  CHECK(std::abs(fine - coarse) / std::abs(finer - fine) >= 3.0);
  CHECK(std::abs(finer - exact) < std::abs(coarse - exact));
}

TEST_CASE("finite-difference parity labels") {
  const auto spectrum = fd_spectrum(0.5, 1, 256, 4, true);
  REQUIRE(spectrum[0].parity.has_value());
  CHECK(*spectrum[0].parity == Parity::even);
  const auto odd = fd_eigenfunctions(0.5, 1, 256, Parity::odd, 2);
  REQUIRE(odd.size() == 2u);
  CHECK(odd[0].parity == Parity::odd);
  CHECK(odd[0].samples.size() == 256u);
  const auto rk_odd = rk_find_eigenvalue(0.5, 1, Parity::odd, odd[0].beta - 0.01, odd[0].beta + 0.01);
  CHECK(std::abs(rk_odd - odd[0].beta) < 1e-3);
}

TEST_CASE("cross-oracle agreement for the tabulated states") {
  struct Case {
    int m;
    double lo, hi;
  };
  const Case cases[] = {{0, 1.0, 1.3},  {0, 3.9, 4.2},  {0, 8.9, 9.2},
                        {1, 0.2, 0.3},  {1, 1.6, 1.7},  {1, 4.3, 4.6},
                        {5, 3.6, 3.8},  {5, 8.7, 9.0},  {5, 15.0, 15.3}};
  int last_m = -1;
  std::vector<FdEigenvalue> fd;
  for (const Case& c : cases) {
    if (c.m != last_m) {
      fd = fd_spectrum(0.5, c.m, 1024, 8);
      last_m = c.m;
    }
    const double rk = rk_find_eigenvalue(0.5, c.m, Parity::even, c.lo, c.hi);
    double best = 1e9;
    for (const auto& e : fd) best = std::min(best, std::abs(e.extrapolated - rk));
    CHECK(best < 1e-4);
  }
}
