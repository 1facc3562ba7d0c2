#pragma once

// Fourier-coefficient recursions for the angular equation
//
//   psi'' + alpha cos(t) / w psi' - m^2 alpha^2 / w^2 psi + beta psi = 0,
//   w = 1 + alpha sin(t),
//
// with psi = sum_n c_n exp(i n t). The three-term row comes from multiplying
// by w (m = 0 only), the five-term row from multiplying by w^2.
//
// Coefficients are handled in the real phase convention d_n = c_n / i^n
// (even sector) or d_n = c_n / i^(n-1) (odd sector; the extra global phase
// makes psi real). In that convention d_{-n} = d_n for even and
// d_{-n} = -d_n, d_0 = 0 for odd parity, and every row is real.

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "torus/model.hpp"

namespace torus {

// One linear relation sum_k stencil[k + 2] d_{center + k} = 0, k in [-2, 2].
struct RecursionRow {
  int center = 0;
  std::array<double, 5> stencil{};
  // The complex multiplier of c_{n+k} is stencil[k + 2] * i^(phase_power - k).
  int phase_power = 0;

  double at(int offset) const { return stencil.at(offset + 2); }
  std::complex<double> complex_multiplier(int offset) const;
};

// Projection of w * (equation at m = 0) onto exp(i n t).
RecursionRow three_term_row(int n, double alpha, double beta);

// Projection of w^2 * (equation) onto exp(i n t).
RecursionRow five_term_row(int n, double alpha, int m, double beta);

enum class Stencil {
  automatic,  // three-term for m = 0 with a single seed, five-term otherwise
  three_term,
  five_term,
};

// Leading divisor vanished while marching: beta sits on a recursion pole.
class RecursionPole : public std::domain_error {
 public:
  RecursionPole(int row, double beta);
  int row() const { return row_; }
  double beta() const { return beta_; }

 private:
  int row_;
  double beta_;
};

class CoefficientSeries {
 public:
  // `nonnegative` holds d_0 .. d_N. Throws std::invalid_argument when an odd
  // series has d_0 != 0.
  CoefficientSeries(ModeSpec mode, std::vector<double> nonnegative,
                    double log_scale = 0.0);

  const ModeSpec& mode() const { return mode_; }
  int order() const { return static_cast<int>(values_.size()) - 1; }

  // d_n for any n in [-N, N]; zero outside.
  double d(int n) const;
  // c_n for any n in [-N, N]; zero outside.
  std::complex<double> c(int n) const;

  std::span<const double> nonnegative() const { return values_; }
  // The physical coefficients are exp(log_scale) times the stored ones.
  double log_scale() const { return log_scale_; }

  // c_{-N} .. c_N.
  std::vector<std::complex<double>> two_sided() const;

 private:
  ModeSpec mode_;
  std::vector<double> values_;
  double log_scale_;
};

// theta -> pi - theta acting on a two-sided vector c_{-N} .. c_N:
// c_n -> (-1)^n c_{-n}.
std::vector<std::complex<double>> reflect(
    std::span<const std::complex<double>> two_sided);

// Magnitude above which propagate renormalizes the running coefficients.
inline constexpr double kRescaleThreshold = 1e100;

// Marches the recursion upward from the lowest free coefficients.
//
// Seeds (phase convention):
//   three-term even: {d_0}       (d_1 = d_0 / alpha; d_1 = 0 at beta = 0)
//   three-term odd:  {d_1}
//   five-term even:  {d_0, d_1}
//   five-term odd:   {d_1, d_2}
//
// Throws std::invalid_argument for a seed count that does not fit the stencil
// and RecursionPole when a leading divisor is exactly zero.
CoefficientSeries propagate(std::span<const double> seeds, ModeSpec mode,
                            double alpha, double beta, int order,
                            Stencil stencil = Stencil::automatic);

// Product of the signs of every leading divisor the five-term march divides
// by up to `order`. Zero when one of them vanishes.
double five_term_divisor_sign(ModeSpec mode, double alpha, double beta,
                              int order);

// True when beta lies within `tolerance` of a pole of the five-term march,
// beta = (n + 1)(n + 2) for a row n in use.
bool near_recursion_pole(double beta, int order, double tolerance);

struct Residual {
  double max_abs = 0.0;
  double max_psi = 0.0;
  double relative() const { return max_psi > 0.0 ? max_abs / max_psi : max_abs; }
};

// Substitutes the truncated series into the angular equation on a uniform
// grid over [0, 2 pi), differentiating term by term.
// Throws std::invalid_argument when grid_size < 4 N.
Residual residual(const CoefficientSeries& series, double alpha, int m,
                  double beta, int grid_size = 256);

}  // namespace torus
