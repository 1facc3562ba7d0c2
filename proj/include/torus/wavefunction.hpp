#pragma once

// Real trigonometric form of the angular eigenfunctions,
//   psi(theta) = a_0 + sum_k (a_k cos(k theta) + b_k sin(k theta)),
// with the azimuthal factor exp(i m phi) carried as metadata only.

#include <string_view>
#include <vector>

#include "torus/model.hpp"
#include "torus/oracles.hpp"
#include "torus/recursion.hpp"

namespace torus {

enum class Normalization { none, unit_weighted };
enum class Provenance { fourier, rk, fd };

std::string_view to_string(Normalization normalization);
Normalization parse_normalization(std::string_view text);

struct Eigenfunction {
  ModeSpec mode;
  int state = 0;
  double beta = 0.0;
  std::vector<double> a;  // a_0 .. a_K (cosines)
  std::vector<double> b;  // b_0 .. b_K (sines), b_0 = 0
  Normalization normalization = Normalization::none;
  Provenance provenance = Provenance::fourier;

  int order() const { return static_cast<int>(a.size()) - 1; }
};

// Exact conversion of c_{-N} .. c_N to a_k, b_k. Throws std::invalid_argument
// if the stored coefficients break the parity relations.
Eigenfunction from_series(const CoefficientSeries& series, double beta, int state = 0);

double evaluate(const Eigenfunction& psi, double theta);

// Unit norm under the weight (1 + alpha sin(theta)) d(theta) with the first
// nonzero coefficient in (a_0, b_1, a_1, b_2, a_2, ...) made positive.
// Throws std::invalid_argument for the zero function.
Eigenfunction normalize(const Eigenfunction& psi, double alpha);

// int_0^{2pi} psi1 psi2 (1 + alpha sin(theta)) d(theta) by the trapezoid rule.
// Throws std::invalid_argument when the azimuthal numbers differ.
double overlap(const Eigenfunction& psi1, const Eigenfunction& psi2, double alpha,
               int points = 1024);

// The same weighted norm from the coefficients alone.
double weighted_norm_squared(const Eigenfunction& psi, double alpha);

// Largest coefficient that breaks the parity pattern of psi.mode.parity,
// relative to the largest coefficient overall.
double parity_violation(const Eigenfunction& psi);

struct ScaledComparison {
  double scale = 0.0;
  double max_abs_deviation = 0.0;
};

// Least-squares s minimizing sum (s a_i - b_i)^2 over matching samples.
// Throws std::invalid_argument for mismatched angles, fewer than two points or
// all-zero `a`.
ScaledComparison compare_scaled(const std::vector<ThetaValue>& a,
                                const std::vector<ThetaValue>& b);

std::vector<ThetaValue> sample(const Eigenfunction& psi, const std::vector<double>& thetas);

}  // namespace torus
