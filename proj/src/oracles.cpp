#include "torus/oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace torus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStart = -0.5 * kPi;

using State = std::array<double, 2>;

State rhs(double theta, const State& y, double alpha, double mm_a2, double beta) {
  const double w = 1.0 + alpha * std::sin(theta);
  return {y[1], -alpha * std::cos(theta) / w * y[1] + mm_a2 / (w * w) * y[0] - beta * y[0]};
}

void require_m(int m) {
  if (m < 0) throw std::invalid_argument("m must be nonnegative");
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct FdMatrix {
  Eigen::MatrixXd symmetric;
  std::vector<double> weight;
};

FdMatrix fd_matrix(double alpha, int m, int grid_size) {
  const double h = 2.0 * kPi / grid_size;
  const double mm_a2 = static_cast<double>(m) * m * alpha * alpha;
  std::vector<double> w(static_cast<std::size_t>(grid_size));
  std::vector<double> w_half(static_cast<std::size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) {
    w[static_cast<std::size_t>(j)] = metric_factor(j * h, alpha);
    w_half[static_cast<std::size_t>(j)] = metric_factor((j + 0.5) * h, alpha);
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(grid_size, grid_size);
  const double inv_h2 = 1.0 / (h * h);
  for (int j = 0; j < grid_size; ++j) {
    const int jp = (j + 1) % grid_size;
    const int jm = (j + grid_size - 1) % grid_size;
    const double p_plus = w_half[static_cast<std::size_t>(j)];
    const double p_minus = w_half[static_cast<std::size_t>(jm)];
    const double wj = w[static_cast<std::size_t>(j)];
    a(j, j) += (p_plus + p_minus) * inv_h2 + mm_a2 / wj;
    a(j, jp) -= p_plus * inv_h2;
    a(j, jm) -= p_minus * inv_h2;
  }
  // W^{-1/2} K W^{-1/2}
  for (int i = 0; i < grid_size; ++i) {
    for (int j = 0; j < grid_size; ++j) {
      a(i, j) /= std::sqrt(w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)]);
    }
  }
  return {std::move(a), std::move(w)};
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve(const FdMatrix& matrix,
                                                     bool vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      matrix.symmetric, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "dense symmetric eigensolver did not converge for grid "
        << matrix.symmetric.rows() << " (Eigen status " << solver.info() << ")";
    throw OracleError(msg.str());
  }
  return solver;
}

void require_grid(int grid_size) {
  if (grid_size < 64 || grid_size % 2 != 0 || grid_size > 2048) {
    throw std::invalid_argument("fd grid must be even and within [64, 2048]");
  }
}

// +1 for even, -1 for odd under theta -> pi - theta, from grid values.
double reflection_overlap(const std::vector<double>& psi) {
  const int n = static_cast<int>(psi.size());
  double num = 0.0, den = 0.0;
  for (int j = 0; j < n; ++j) {
    const int mirror = ((n / 2 - j) % n + n) % n;
    num += psi[static_cast<std::size_t>(j)] * psi[static_cast<std::size_t>(mirror)];
    den += psi[static_cast<std::size_t>(j)] * psi[static_cast<std::size_t>(j)];
  }
  return num / den;
}

std::vector<double> grid_function(const Eigen::VectorXd& u, const std::vector<double>& w) {
  std::vector<double> psi(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    psi[j] = u(static_cast<Eigen::Index>(j)) / std::sqrt(w[j]);
  }
  return psi;
}

}  // namespace

void OracleConfig::validate() const {
  if (rk_steps < 100) throw std::invalid_argument("rk_steps must be at least 100");
  require_grid(fd_grid);
}

ShootingState integrate(double alpha, int m, double beta, Parity parity,
                        double theta_end, const OracleConfig& config) {
  require_alpha(alpha);
  require_m(m);
  config.validate();
  const double span = theta_end - kStart;
  const int steps = std::max(
      1, static_cast<int>(std::ceil(std::abs(span) / kPi * config.rk_steps - 1e-9)));
  const double h = span / steps;
  const double mm_a2 = static_cast<double>(m) * m * alpha * alpha;

  State y = parity == Parity::even ? State{1.0, 0.0} : State{0.0, 1.0};
  for (int k = 0; k < steps; ++k) {
    const double t = kStart + k * h;
    const State k1 = rhs(t, y, alpha, mm_a2, beta);
    const State k2 = rhs(t + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]},
                         alpha, mm_a2, beta);
    const State k3 = rhs(t + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]},
                         alpha, mm_a2, beta);
    const State k4 = rhs(t + h, {y[0] + h * k3[0], y[1] + h * k3[1]}, alpha, mm_a2, beta);
    y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
      std::ostringstream msg;
      msg << "non-finite shooting state at beta = " << beta << " after step "
          << k + 1 << " of " << steps;
      throw OracleError(msg.str());
    }
  }
  return {theta_end, y[0], y[1]};
}

double rk_mismatch(double alpha, int m, double beta, Parity parity,
                   const OracleConfig& config) {
  const ShootingState forward = integrate(alpha, m, beta, parity, 0.5 * kPi, config);
  const ShootingState backward = integrate(alpha, m, beta, parity, -1.5 * kPi, config);
  // Reflection about -pi/2: the backward branch mirrors the forward one.
  const double scale = std::max({1.0, std::abs(forward.psi), std::abs(forward.dpsi)});
  const double forward_value = parity == Parity::even ? forward.dpsi : forward.psi;
  const double backward_value = parity == Parity::even ? -backward.dpsi : -backward.psi;
  if (std::abs(forward_value - backward_value) > config.matching_tolerance * scale) {
    std::ostringstream msg;
    msg << "forward and backward shooting branches disagree at beta = " << beta;
    throw OracleError(msg.str());
  }
  return forward_value;
}

double rk_find_eigenvalue(double alpha, int m, Parity parity, double beta_lo,
                          double beta_hi, const OracleConfig& config) {
  if (!(beta_lo < beta_hi)) throw std::invalid_argument("empty bracket");
  double f_lo = rk_mismatch(alpha, m, beta_lo, parity, config);
  const double f_hi = rk_mismatch(alpha, m, beta_hi, parity, config);
  if (f_lo == 0.0) return beta_lo;
  if (f_hi == 0.0) return beta_hi;
  if (sign_of(f_lo) == sign_of(f_hi)) {
    std::ostringstream msg;
    msg << "shooting mismatch keeps its sign on [" << beta_lo << ", " << beta_hi << "]";
    throw BracketError(msg.str());
  }
  double lo = beta_lo, hi = beta_hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = rk_mismatch(alpha, m, mid, parity, config);
    if (f_mid == 0.0) return mid;
    if (sign_of(f_mid) == sign_of(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> rk_spectrum(double alpha, int m, Parity parity, double beta_max,
                                double scan_step, const OracleConfig& config) {
  if (!(beta_max > 0.0) || !(scan_step > 0.0)) {
    throw std::invalid_argument("beta_max and scan_step must be positive");
  }
  // beta = 0 is the constant solution for m = 0 even; start past it.
  const long first = (m == 0 && parity == Parity::even) ? 1 : 0;
  const long last = static_cast<long>(std::ceil(beta_max / scan_step - 1e-9));
  std::vector<double> out;
  double prev_beta = 0.0, prev = 0.0;
  bool have_prev = false;
  for (long k = first; k <= last; ++k) {
    const double beta = std::min(k * scan_step, beta_max);
    const double value = rk_mismatch(alpha, m, beta, parity, config);
    if (have_prev && sign_of(value) * sign_of(prev) < 0) {
      out.push_back(rk_find_eigenvalue(alpha, m, parity, prev_beta, beta, config));
    } else if (value == 0.0) {
      out.push_back(beta);
    }
    have_prev = true;
    prev_beta = beta;
    prev = value;
  }
  return out;
}

std::vector<ThetaValue> rk_sample(double alpha, int m, double beta, Parity parity,
                                  const std::vector<double>& thetas,
                                  const OracleConfig& config) {
  std::vector<ThetaValue> out;
  out.reserve(thetas.size());
  for (double theta : thetas) {
    double t = theta;
    while (t >= 0.5 * kPi) t -= 2.0 * kPi;
    while (t < -1.5 * kPi) t += 2.0 * kPi;
    out.push_back({theta, integrate(alpha, m, beta, parity, t, config).psi});
  }
  return out;
}

std::vector<FdEigenvalue> fd_spectrum(double alpha, int m, int grid_size, int k_lowest,
                                      bool classify_parity) {
  require_alpha(alpha);
  require_m(m);
  require_grid(grid_size);
  if (k_lowest < 1 || k_lowest > grid_size / 2) {
    throw std::invalid_argument("k_lowest must lie in [1, grid / 2]");
  }
  const FdMatrix fine = fd_matrix(alpha, m, grid_size);
  const auto fine_solver = solve(fine, classify_parity);
  const FdMatrix coarse = fd_matrix(alpha, m, grid_size / 2);
  const auto coarse_solver = solve(coarse, false);

  std::vector<FdEigenvalue> out;
  for (int k = 0; k < k_lowest; ++k) {
    FdEigenvalue e;
    e.beta = fine_solver.eigenvalues()(k);
    const double coarse_beta = coarse_solver.eigenvalues()(k);
    e.extrapolated = e.beta + (e.beta - coarse_beta) / 3.0;
    e.error_estimate = std::abs(e.extrapolated - e.beta);
    if (classify_parity) {
      const auto psi = grid_function(fine_solver.eigenvectors().col(k), fine.weight);
      e.parity = reflection_overlap(psi) > 0.0 ? Parity::even : Parity::odd;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<FdEigenfunction> fd_eigenfunctions(double alpha, int m, int grid_size,
                                               Parity parity, int k_lowest) {
  require_alpha(alpha);
  require_m(m);
  require_grid(grid_size);
  const FdMatrix matrix = fd_matrix(alpha, m, grid_size);
  const auto solver = solve(matrix, true);
  const double h = 2.0 * kPi / grid_size;

  std::vector<FdEigenfunction> out;
  for (int k = 0; k < grid_size && static_cast<int>(out.size()) < k_lowest; ++k) {
    auto psi = grid_function(solver.eigenvectors().col(k), matrix.weight);
    const Parity found = reflection_overlap(psi) > 0.0 ? Parity::even : Parity::odd;
    if (found != parity) continue;
    double peak = 0.0;
    for (double v : psi) peak = std::max(peak, std::abs(v));
    FdEigenfunction f{solver.eigenvalues()(k), found, {}};
    f.samples.reserve(psi.size());
    for (int j = 0; j < grid_size; ++j) {
      f.samples.push_back({j * h, psi[static_cast<std::size_t>(j)] / peak});
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace torus
