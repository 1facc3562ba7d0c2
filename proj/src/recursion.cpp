#include "torus/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace torus {

namespace {

std::complex<double> i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

double reflection_sign(Parity parity) {
  return parity == Parity::even ? 1.0 : -1.0;
}

// Divisor multiplying the unknown d_{n+2} in five-term row n, including the
// mirrored d_{-(n+2)} term that only appears in the even row n = 0.
double five_term_divisor(const RecursionRow& row, Parity parity) {
  double divisor = row.at(2);
  if (row.center == 0 && parity == Parity::even) divisor += row.at(-2);
  return divisor;
}

int five_term_first_row(Parity parity) {
  return parity == Parity::even ? 0 : 1;
}

class Marcher {
 public:
  Marcher(Parity parity, int order) : sign_(reflection_sign(parity)) {
    values_.reserve(static_cast<std::size_t>(order) + 1);
  }

  double get(int n) const {
    if (n < 0) return sign_ * values_.at(static_cast<std::size_t>(-n));
    return values_.at(static_cast<std::size_t>(n));
  }

  void push(double value) {
    values_.push_back(value);
    if (std::abs(value) > kRescaleThreshold) {
      double peak = 0.0;
      for (double v : values_) peak = std::max(peak, std::abs(v));
      for (double& v : values_) v /= peak;
      log_scale_ += std::log(peak);
    }
  }

  double sign() const { return sign_; }
  std::vector<double> take() { return std::move(values_); }
  double log_scale() const { return log_scale_; }

 private:
  double sign_;
  std::vector<double> values_;
  double log_scale_ = 0.0;
};

CoefficientSeries propagate_three_term(std::span<const double> seeds,
                                       ModeSpec mode, double alpha,
                                       double beta, int order) {
  if (seeds.size() != 1) {
    throw std::invalid_argument("three-term recursion takes exactly one seed");
  }
  Marcher march(mode.parity, order);
  if (mode.parity == Parity::even) {
    march.push(seeds[0]);
    // Row n = 0 reads beta (2 d_0 / alpha - 2 d_1) = 0; at beta = 0 only the
    // constant solution is periodic.
    if (order >= 1) march.push(beta == 0.0 ? 0.0 : seeds[0] / alpha);
  } else {
    march.push(0.0);
    if (order >= 1) march.push(seeds[0]);
  }
  for (int n = 1; n < order; ++n) {
    const RecursionRow row = three_term_row(n, alpha, beta);
    const double divisor = row.at(1);
    if (divisor == 0.0) throw RecursionPole(n, beta);
    const double known = row.at(0) * march.get(n) + row.at(-1) * march.get(n - 1);
    march.push(-known / divisor);
  }
  const double log_scale = march.log_scale();
  return CoefficientSeries(mode, march.take(), log_scale);
}

CoefficientSeries propagate_five_term(std::span<const double> seeds,
                                      ModeSpec mode, double alpha, double beta,
                                      int order) {
  if (seeds.size() != 2) {
    throw std::invalid_argument("five-term recursion takes exactly two seeds");
  }
  Marcher march(mode.parity, order);
  const int first_row = five_term_first_row(mode.parity);
  if (mode.parity == Parity::even) {
    march.push(seeds[0]);
    if (order >= 1) march.push(seeds[1]);
  } else {
    if (order < 2) {
      throw std::invalid_argument("odd five-term series needs order >= 2");
    }
    march.push(0.0);
    march.push(seeds[0]);
    march.push(seeds[1]);
  }
  for (int n = first_row; n + 2 <= order; ++n) {
    const RecursionRow row = five_term_row(n, alpha, mode.m, beta);
    const double divisor = five_term_divisor(row, mode.parity);
    if (divisor == 0.0) throw RecursionPole(n, beta);
    double known = 0.0;
    for (int k = -2; k <= 1; ++k) {
      const int index = n + k;
      if (index == -(n + 2)) continue;  // folded into the divisor
      known += row.at(k) * march.get(index);
    }
    march.push(-known / divisor);
  }
  const double log_scale = march.log_scale();
  return CoefficientSeries(mode, march.take(), log_scale);
}

}  // namespace

std::complex<double> RecursionRow::complex_multiplier(int offset) const {
  return at(offset) * i_power(phase_power - offset);
}

RecursionRow three_term_row(int n, double alpha, double beta) {
  const double nn = n;
  RecursionRow row;
  row.center = n;
  row.phase_power = 1;
  row.stencil = {0.0,
                 -(beta - nn * (nn - 1.0)),
                 (2.0 / alpha) * (beta - nn * nn),
                 nn * (nn + 1.0) - beta,
                 0.0};
  return row;
}

RecursionRow five_term_row(int n, double alpha, int m, double beta) {
  const double nn = n;
  const double a2 = alpha * alpha;
  const double mm = static_cast<double>(m) * m;
  RecursionRow row;
  row.center = n;
  row.phase_power = 0;
  row.stencil = {
      0.25 * a2 * (beta - (nn - 2.0) * (nn - 1.0)),
      -alpha * (beta - (nn - 1.0) * (nn - 1.0)) + 0.5 * alpha * (nn - 1.0),
      (1.0 + 0.5 * a2) * (beta - nn * nn) - mm * a2,
      -alpha * (beta - (nn + 1.0) * (nn + 1.0)) - 0.5 * alpha * (nn + 1.0),
      0.25 * a2 * (beta - (nn + 1.0) * (nn + 2.0)),
  };
  return row;
}

RecursionPole::RecursionPole(int row, double beta)
    : std::domain_error("recursion pole in row " + std::to_string(row) +
                        " at beta = " + std::to_string(beta)),
      row_(row),
      beta_(beta) {}

CoefficientSeries::CoefficientSeries(ModeSpec mode,
                                     std::vector<double> nonnegative,
                                     double log_scale)
    : mode_(mode), values_(std::move(nonnegative)), log_scale_(log_scale) {
  if (values_.empty()) {
    throw std::invalid_argument("coefficient series needs at least d_0");
  }
  if (mode_.parity == Parity::odd && values_.front() != 0.0) {
    throw std::invalid_argument("odd-parity series must have d_0 = 0");
  }
}

double CoefficientSeries::d(int n) const {
  const int k = std::abs(n);
  if (k > order()) return 0.0;
  const double value = values_[static_cast<std::size_t>(k)];
  return n < 0 ? reflection_sign(mode_.parity) * value : value;
}

std::complex<double> CoefficientSeries::c(int n) const {
  const int phase = mode_.parity == Parity::even ? n : n - 1;
  return d(n) * i_power(phase);
}

std::vector<std::complex<double>> CoefficientSeries::two_sided() const {
  std::vector<std::complex<double>> out;
  out.reserve(2 * static_cast<std::size_t>(order()) + 1);
  for (int n = -order(); n <= order(); ++n) out.push_back(c(n));
  return out;
}

std::vector<std::complex<double>> reflect(
    std::span<const std::complex<double>> two_sided) {
  if (two_sided.size() % 2 == 0) {
    throw std::invalid_argument("two-sided series must have odd length");
  }
  const int order = static_cast<int>(two_sided.size() / 2);
  std::vector<std::complex<double>> out(two_sided.size());
  for (int n = -order; n <= order; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    out[static_cast<std::size_t>(n + order)] =
        sign * two_sided[static_cast<std::size_t>(-n + order)];
  }
  return out;
}

CoefficientSeries propagate(std::span<const double> seeds, ModeSpec mode,
                            double alpha, double beta, int order,
                            Stencil stencil) {
  require_alpha(alpha);
  if (order < 0) throw std::invalid_argument("order must be nonnegative");
  if (mode.m < 0) throw std::invalid_argument("m must be nonnegative");
  if (stencil == Stencil::automatic) {
    stencil = (mode.m == 0 && seeds.size() == 1) ? Stencil::three_term
                                                 : Stencil::five_term;
  }
  if (stencil == Stencil::three_term) {
    if (mode.m != 0) {
      throw std::invalid_argument("three-term recursion requires m = 0");
    }
    return propagate_three_term(seeds, mode, alpha, beta, order);
  }
  return propagate_five_term(seeds, mode, alpha, beta, order);
}

double five_term_divisor_sign(ModeSpec mode, double alpha, double beta,
                              int order) {
  double sign = 1.0;
  for (int n = five_term_first_row(mode.parity); n + 2 <= order; ++n) {
    const double divisor =
        five_term_divisor(five_term_row(n, alpha, mode.m, beta), mode.parity);
    if (divisor == 0.0) return 0.0;
    if (divisor < 0.0) sign = -sign;
  }
  return sign;
}

bool near_recursion_pole(double beta, int order, double tolerance) {
  for (int n = 0; n + 2 <= order; ++n) {
    const double pole = static_cast<double>(n + 1) * (n + 2);
    if (std::abs(beta - pole) < tolerance) return true;
  }
  return false;
}

Residual residual(const CoefficientSeries& series, double alpha, int m,
                  double beta, int grid_size) {
  require_alpha(alpha);
  const int order = series.order();
  if (grid_size < 4 * order || grid_size < 4) {
    throw std::invalid_argument("residual grid must hold at least 4N points");
  }
  const auto coefficients = series.two_sided();
  const double mm = static_cast<double>(m) * m;
  Residual out;
  for (int j = 0; j < grid_size; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / grid_size;
    std::complex<double> psi{}, dpsi{}, d2psi{};
    for (int n = -order; n <= order; ++n) {
      const std::complex<double> term =
          coefficients[static_cast<std::size_t>(n + order)] *
          std::polar(1.0, n * theta);
      psi += term;
      dpsi += std::complex<double>(0.0, n) * term;
      d2psi -= static_cast<double>(n) * n * term;
    }
    const double w = metric_factor(theta, alpha);
    const std::complex<double> lhs = d2psi + alpha * std::cos(theta) / w * dpsi -
                                     mm * alpha * alpha / (w * w) * psi +
                                     beta * psi;
    out.max_abs = std::max(out.max_abs, std::abs(lhs));
    out.max_psi = std::max(out.max_psi, std::abs(psi));
  }
  return out;
}

}  // namespace torus
