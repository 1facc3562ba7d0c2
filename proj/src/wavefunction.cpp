#include "torus/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace torus {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_coefficient(const Eigenfunction& psi) {
  double peak = 0.0;
  for (double v : psi.a) peak = std::max(peak, std::abs(v));
  for (double v : psi.b) peak = std::max(peak, std::abs(v));
  return peak;
}

// Is the cos(k theta) (or sin) term allowed in this parity sector?
bool allowed(Parity parity, bool cosine, int k) {
  const bool even_k = k % 2 == 0;
  if (parity == Parity::even) return cosine ? even_k : !even_k;
  return cosine ? !even_k : even_k;
}

}  // namespace

std::string_view to_string(Normalization normalization) {
  return normalization == Normalization::none ? "none" : "unit-weighted";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "none") return Normalization::none;
  if (text == "unit-weighted") return Normalization::unit_weighted;
  throw std::invalid_argument("unknown normalization '" + std::string(text) + "'");
}

Eigenfunction from_series(const CoefficientSeries& series, double beta, int state) {
  const int order = series.order();
  const ModeSpec mode = series.mode();
  double peak = 0.0;
  for (int n = -order; n <= order; ++n) peak = std::max(peak, std::abs(series.c(n)));
  const double tolerance = 1e-12 * std::max(peak, 1e-300);

  // Parity relations on the complex coefficients.
  for (int n = 0; n <= order; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double expected = mode.parity == Parity::even ? sign : -sign;
    if (std::abs(series.c(n) - expected * series.c(-n)) > tolerance) {
      throw std::invalid_argument("series violates its parity relations");
    }
  }

  Eigenfunction out;
  out.mode = mode;
  out.state = state;
  out.beta = beta;
  out.a.assign(static_cast<std::size_t>(order) + 1, 0.0);
  out.b.assign(static_cast<std::size_t>(order) + 1, 0.0);
  const std::complex<double> c0 = series.c(0);
  if (std::abs(c0.imag()) > tolerance) {
    throw std::invalid_argument("series does not describe a real function");
  }
  out.a[0] = c0.real();
  for (int k = 1; k <= order; ++k) {
    const std::complex<double> cos_part = series.c(k) + series.c(-k);
    const std::complex<double> sin_part =
        std::complex<double>(0.0, 1.0) * (series.c(k) - series.c(-k));
    if (std::abs(cos_part.imag()) > tolerance || std::abs(sin_part.imag()) > tolerance) {
      throw std::invalid_argument("series does not describe a real function");
    }
    out.a[static_cast<std::size_t>(k)] = cos_part.real();
    out.b[static_cast<std::size_t>(k)] = sin_part.real();
  }
  return out;
}

double evaluate(const Eigenfunction& psi, double theta) {
  double value = psi.a.empty() ? 0.0 : psi.a[0];
  for (int k = 1; k <= psi.order(); ++k) {
    value += psi.a[static_cast<std::size_t>(k)] * std::cos(k * theta) +
             psi.b[static_cast<std::size_t>(k)] * std::sin(k * theta);
  }
  return value;
}

std::vector<ThetaValue> sample(const Eigenfunction& psi, const std::vector<double>& thetas) {
  std::vector<ThetaValue> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back({t, evaluate(psi, t)});
  return out;
}

double overlap(const Eigenfunction& psi1, const Eigenfunction& psi2, double alpha,
               int points) {
  require_alpha(alpha);
  if (psi1.mode.m != psi2.mode.m) {
    throw std::invalid_argument("overlap needs equal azimuthal numbers");
  }
  if (points < 512) throw std::invalid_argument("overlap needs at least 512 points");
  double sum = 0.0;
  for (int j = 0; j < points; ++j) {
    const double theta = kTwoPi * j / points;
    sum += evaluate(psi1, theta) * evaluate(psi2, theta) * metric_factor(theta, alpha);
  }
  return sum * kTwoPi / points;
}

double weighted_norm_squared(const Eigenfunction& psi, double alpha) {
  const int order = psi.order();
  const auto at = [](const std::vector<double>& v, int k) {
    return k >= 0 && k < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(k)] : 0.0;
  };
  // g = psi sin(theta), up to order + 1.
  std::vector<double> ga(static_cast<std::size_t>(order) + 2, 0.0);
  std::vector<double> gb(static_cast<std::size_t>(order) + 2, 0.0);
  gb[1] += at(psi.a, 0);
  for (int k = 1; k <= order; ++k) {
    const double ak = at(psi.a, k), bk = at(psi.b, k);
    gb[static_cast<std::size_t>(k + 1)] += 0.5 * ak;
    if (k - 1 >= 1) gb[static_cast<std::size_t>(k - 1)] -= 0.5 * ak;
    ga[static_cast<std::size_t>(k - 1)] += 0.5 * bk;
    ga[static_cast<std::size_t>(k + 1)] -= 0.5 * bk;
  }
  const double pi = std::numbers::pi;
  double plain = kTwoPi * at(psi.a, 0) * at(psi.a, 0);
  double weighted = kTwoPi * at(psi.a, 0) * ga[0];
  for (int k = 1; k <= order; ++k) {
    plain += pi * (at(psi.a, k) * at(psi.a, k) + at(psi.b, k) * at(psi.b, k));
    weighted += pi * (at(psi.a, k) * ga[static_cast<std::size_t>(k)] +
                      at(psi.b, k) * gb[static_cast<std::size_t>(k)]);
  }
  return plain + alpha * weighted;
}

Eigenfunction normalize(const Eigenfunction& psi, double alpha) {
  const double peak = max_coefficient(psi);
  if (peak == 0.0) throw std::invalid_argument("cannot normalize the zero function");
  const double norm = std::sqrt(overlap(psi, psi, alpha));

  double sign = 1.0;
  const double threshold = 1e-12 * peak;
  // Scan a_0, b_1, a_1, b_2, a_2, ...
  std::vector<double> ordered{psi.a[0]};
  for (int k = 1; k <= psi.order(); ++k) {
    ordered.push_back(psi.b[static_cast<std::size_t>(k)]);
    ordered.push_back(psi.a[static_cast<std::size_t>(k)]);
  }
  for (double v : ordered) {
    if (std::abs(v) > threshold) {
      sign = v > 0.0 ? 1.0 : -1.0;
      break;
    }
  }

  Eigenfunction out = psi;
  // + 0.0 turns -0.0 into 0.0.
  for (double& v : out.a) v = v * (sign / norm) + 0.0;
  for (double& v : out.b) v = v * (sign / norm) + 0.0;
  out.normalization = Normalization::unit_weighted;
  return out;
}

double parity_violation(const Eigenfunction& psi) {
  const double peak = max_coefficient(psi);
  if (peak == 0.0) return 0.0;
  double worst = 0.0;
  for (int k = 0; k <= psi.order(); ++k) {
    if (!allowed(psi.mode.parity, true, k)) {
      worst = std::max(worst, std::abs(psi.a[static_cast<std::size_t>(k)]));
    }
    if (k >= 1 && !allowed(psi.mode.parity, false, k)) {
      worst = std::max(worst, std::abs(psi.b[static_cast<std::size_t>(k)]));
    }
  }
  return worst / peak;
}

ScaledComparison compare_scaled(const std::vector<ThetaValue>& a,
                                const std::vector<ThetaValue>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument("compare_scaled needs two equal lists of >= 2 samples");
  }
  double ab = 0.0, aa = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].theta - b[i].theta) > 1e-12) {
      throw std::invalid_argument("compare_scaled samples are taken at different angles");
    }
    ab += a[i].psi * b[i].psi;
    aa += a[i].psi * a[i].psi;
  }
  if (aa == 0.0) throw std::invalid_argument("compare_scaled reference is identically zero");
  ScaledComparison out{ab / aa, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.max_abs_deviation =
        std::max(out.max_abs_deviation, std::abs(out.scale * a[i].psi - b[i].psi));
  }
  return out;
}

}  // namespace torus
