#include "torus/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SVD>

namespace torus {

namespace {

using Coefficients = std::vector<double>;

// p(beta) * (c0 + c1 beta)
Coefficients multiply_linear(const Coefficients& p, double c0, double c1) {
  Coefficients out(p.size() + 1, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k] += c0 * p[k];
    out[k + 1] += c1 * p[k];
  }
  return out;
}

Coefficients add(Coefficients lhs, const Coefficients& rhs) {
  if (lhs.size() < rhs.size()) lhs.resize(rhs.size(), 0.0);
  for (std::size_t k = 0; k < rhs.size(); ++k) lhs[k] += rhs[k];
  return lhs;
}

struct NewtonResult {
  double value;
  bool converged;
  int iterations;
};

// Newton iteration on p(x) / prod (x - r_j) for the roots r_j already found.
NewtonResult deflated_newton(const BetaPolynomial& poly, double start,
                             const std::vector<double>& found) {
  constexpr int kMaxIterations = 100;
  double x = start;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const double p = poly(x);
    if (p == 0.0) return {x, true, it};
    double pole_sum = 0.0;
    for (double r : found) pole_sum += 1.0 / (x - r);
    const double denominator = poly.derivative(x) - p * pole_sum;
    if (denominator == 0.0 || !std::isfinite(denominator)) return {x, false, it};
    const double step = p / denominator;
    x -= step;
    if (!std::isfinite(x)) return {x, false, it};
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(x))) return {x, true, it};
  }
  return {x, false, kMaxIterations};
}

// Rows of the five-term recursion with d_{N+1} = d_{N+2} = 0 and the
// mirrored coefficients folded in. Singular exactly at a determinant root.
Eigen::MatrixXd truncated_rows(double alpha, ModeSpec mode, double beta, int order) {
  const int first = mode.parity == Parity::even ? 0 : 1;
  const int size = order + 1 - first;
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(size, size);
  for (int n = first; n <= order; ++n) {
    const RecursionRow row = five_term_row(n, alpha, mode.m, beta);
    for (int k = -2; k <= 2; ++k) {
      int index = n + k;
      double weight = row.at(k);
      if (index < 0) {
        index = -index;
        if (mode.parity == Parity::odd) weight = -weight;
      }
      if (index > order || index < first) continue;
      rows(n - first, index - first) += weight;
    }
  }
  return rows;
}

// d_0 .. d_N from the right singular vector of the smallest singular value,
// scaled to max |d_n| = 1.
std::vector<double> null_vector(double alpha, ModeSpec mode, double beta, int order) {
  const Eigen::MatrixXd rows = truncated_rows(alpha, mode, beta, order);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const Eigen::VectorXd v = svd.matrixV().col(rows.cols() - 1);
  const int first = mode.parity == Parity::even ? 0 : 1;
  std::vector<double> values(static_cast<std::size_t>(order) + 1, 0.0);
  const double peak = v.cwiseAbs().maxCoeff();
  for (int n = first; n <= order; ++n) values[static_cast<std::size_t>(n)] = v(n - first) / peak;
  return values;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct Bracketed {
  double beta;
  bool converged;
};

template <typename F>
Bracketed bisect(F&& f, double lo, double hi, double f_lo, double tolerance,
                 int max_iterations) {
  for (int it = 0; it < max_iterations && hi - lo > tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const DeterminantValue v = f(mid);
    if (v.degenerate) return {mid, false};
    if (v.value == 0.0) return {mid, true};
    if (sign_of(v.value) == sign_of(f_lo)) {
      lo = mid;
      f_lo = v.value;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), hi - lo <= tolerance};
}

std::vector<Bracketed> scan_roots(double alpha, ModeSpec mode, int order,
                                  const ScanOptions& options) {
  if (!(options.beta_max > 0.0) || !(options.scan_step > 0.0)) {
    throw std::invalid_argument("beta_max and scan_step must be positive");
  }
  auto f = [&](double beta) { return determinant(alpha, mode, beta, order); };
  const bool skip_zero = mode.m == 0 && mode.parity == Parity::even;
  const long last = static_cast<long>(std::ceil(options.beta_max / options.scan_step - 1e-9));

  std::vector<Bracketed> roots;
  bool have_prev = false;
  double prev_beta = 0.0, prev_value = 0.0;
  for (long k = skip_zero ? 1 : 0; k <= last; ++k) {
    const double beta = std::min(k * options.scan_step, options.beta_max);
    const DeterminantValue v = f(beta);
    if (v.degenerate) continue;
    if (v.value == 0.0) {
      roots.push_back({beta, true});
      have_prev = false;
      continue;
    }
    if (have_prev && sign_of(v.value) != sign_of(prev_value)) {
      roots.push_back(bisect(f, prev_beta, beta, prev_value, options.tolerance,
                             options.max_bisections));
    }
    have_prev = true;
    prev_beta = beta;
    prev_value = v.value;
  }
  // Spurious crossings pinned to a pole of the march.
  std::erase_if(roots, [&](const Bracketed& r) {
    return near_recursion_pole(r.beta, order + 1, 1e-8);
  });
  return roots;
}

// Root of the order-`order` determinant nearest `beta`, searching brackets of
// growing width.
std::optional<double> refine_near(double alpha, ModeSpec mode, int order,
                                  double beta, const ScanOptions& options) {
  auto f = [&](double b) { return determinant(alpha, mode, b, order); };
  double half = 0.5 * options.scan_step;
  for (int attempt = 0; attempt < 5; ++attempt, half *= 2.0) {
    const double lo = std::max(beta - half, 0.0);
    const double hi = beta + half;
    const DeterminantValue f_lo = f(lo);
    const DeterminantValue f_hi = f(hi);
    if (f_lo.degenerate || f_hi.degenerate) continue;
    if (sign_of(f_lo.value) * sign_of(f_hi.value) < 0) {
      const Bracketed r =
          bisect(f, lo, hi, f_lo.value, options.tolerance, options.max_bisections);
      if (r.converged && !near_recursion_pole(r.beta, order + 1, 1e-8)) return r.beta;
    }
  }
  return std::nullopt;
}

CoefficientSeries constant_series(ModeSpec mode, int order) {
  std::vector<double> values(static_cast<std::size_t>(order) + 1, 0.0);
  values[0] = 1.0;
  return CoefficientSeries(mode, std::move(values));
}

}  // namespace

double BetaPolynomial::operator()(double beta) const {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * beta + *it;
  }
  return acc;
}

double BetaPolynomial::derivative(double beta) const {
  double acc = 0.0;
  for (std::size_t k = coefficients.size(); k-- > 1;) {
    acc = acc * beta + static_cast<double>(k) * coefficients[k];
  }
  return acc;
}

double coefficient_denominator(int n, double beta) {
  double out = 1.0;
  for (int k = 1; k < n; ++k) out *= static_cast<double>(k) * (k + 1) - beta;
  return out;
}

std::vector<BetaPolynomial> coefficient_polynomials(double alpha, Parity parity,
                                                    int order) {
  require_alpha(alpha);
  if (order < 1) throw std::invalid_argument("order must be at least 1");

  std::vector<Coefficients> numerators;
  numerators.reserve(static_cast<std::size_t>(order) + 1);
  if (parity == Parity::even) {
    numerators.push_back({1.0});
    numerators.push_back({1.0 / alpha});
  } else {
    numerators.push_back({0.0});
    numerators.push_back({1.0});
  }
  // P_{n+1} = -(2/alpha)(beta - n^2) P_n + (beta - n(n-1)) r_n P_{n-1},
  // r_1 = 1, r_n = n(n-1) - beta (ratio of consecutive denominators).
  for (int n = 1; n < order; ++n) {
    const double nn = n;
    Coefficients lead =
        multiply_linear(numerators[static_cast<std::size_t>(n)],
                        (2.0 / alpha) * nn * nn, -2.0 / alpha);
    Coefficients tail = multiply_linear(numerators[static_cast<std::size_t>(n - 1)],
                                        -nn * (nn - 1.0), 1.0);
    if (n >= 2) tail = multiply_linear(tail, nn * (nn - 1.0), -1.0);
    numerators.push_back(add(std::move(lead), tail));
  }

  std::vector<BetaPolynomial> out;
  for (int n = 1; n <= order; ++n) {
    Coefficients c = numerators[static_cast<std::size_t>(n)];
    c.resize(static_cast<std::size_t>(n));  // degree n - 1
    out.push_back({std::move(c), n, parity, 0});
  }
  return out;
}

std::vector<double> RootSet::values() const {
  std::vector<double> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(r.value);
  return out;
}

std::vector<RootSet> roots_warm_started(const std::vector<BetaPolynomial>& polys) {
  std::vector<RootSet> out;
  std::vector<double> previous;
  for (const auto& poly : polys) {
    RootSet set{poly.index, {}};
    if (poly.degree() <= 0) {
      out.push_back(std::move(set));
      previous.clear();
      continue;
    }
    std::vector<double> seeds = previous;
    const double top = static_cast<double>(poly.index - 1);
    seeds.push_back(top * top + 0.5);
    std::sort(seeds.begin(), seeds.end());
    seeds.resize(std::min<std::size_t>(seeds.size(), static_cast<std::size_t>(poly.degree())));

    std::vector<double> found;
    for (double seed : seeds) {
      const NewtonResult r = deflated_newton(poly, seed, found);
      set.roots.push_back({r.value, r.converged, r.iterations});
      if (r.converged) found.push_back(r.value);
    }
    std::sort(set.roots.begin(), set.roots.end(),
              [](const TrackedRoot& x, const TrackedRoot& y) { return x.value < y.value; });
    std::vector<TrackedRoot> merged;
    for (const auto& r : set.roots) {
      if (!merged.empty() && std::abs(merged.back().value - r.value) < 1e-9) {
        merged.back().converged = merged.back().converged || r.converged;
        continue;
      }
      merged.push_back(r);
    }
    set.roots = std::move(merged);
    previous = set.values();
    out.push_back(std::move(set));
  }
  return out;
}

SeriesPair make_series_pair(double alpha, ModeSpec mode, double beta, int order,
                            const SeedPair& seeds) {
  const double seed_det = seeds[0][0] * seeds[1][1] - seeds[0][1] * seeds[1][0];
  if (seed_det == 0.0) throw std::invalid_argument("seeds are linearly dependent");
  return SeriesPair{
      propagate(seeds[0], mode, alpha, beta, order, Stencil::five_term),
      propagate(seeds[1], mode, alpha, beta, order, Stencil::five_term), seeds};
}

DeterminantValue determinant(double alpha, ModeSpec mode, double beta, int order,
                             const SeedPair& seeds) {
  if (order < 2) throw std::invalid_argument("determinant needs N >= 2");
  const double sign = five_term_divisor_sign(mode, alpha, beta, order + 1);
  if (sign == 0.0) return {0.0, true};
  try {
    const SeriesPair pair = make_series_pair(alpha, mode, beta, order + 1, seeds);
    const double a0 = pair.a.d(order), a1 = pair.a.d(order + 1);
    const double b0 = pair.b.d(order), b1 = pair.b.d(order + 1);
    const double norm = std::hypot(a0, a1) * std::hypot(b0, b1);
    if (norm == 0.0) return {0.0, true};
    return {sign * (a0 * b1 - a1 * b0) / norm, false};
  } catch (const RecursionPole&) {
    return {0.0, true};
  }
}

double default_beta_max(int states) {
  const double k = std::max(states, 1) + 2.0;
  return k * k;
}

std::vector<double> determinant_roots(double alpha, ModeSpec mode, int order,
                                      const ScanOptions& options) {
  require_alpha(alpha);
  std::vector<double> out;
  for (const auto& r : scan_roots(alpha, mode, order, options)) out.push_back(r.beta);
  return out;
}

std::vector<Eigenpair> find_eigenvalues(double alpha, ModeSpec mode, int order,
                                        const ScanOptions& options) {
  require_alpha(alpha);
  if (mode.m < 0) throw std::invalid_argument("m must be nonnegative");
  const int residual_grid = std::max(256, 4 * order);

  std::vector<Eigenpair> out;
  if (mode.m == 0 && mode.parity == Parity::even) {
    CoefficientSeries series = constant_series(mode, order);
    const double res = residual(series, alpha, 0, 0.0, residual_grid).relative();
    out.push_back(Eigenpair{.mode = mode,
                            .state = 0,
                            .beta = 0.0,
                            .trivial = true,
                            .series = std::move(series),
                            .mixing = {1.0, 0.0},
                            .order = order,
                            .residual = res,
                            .converged = res < options.residual_limit,
                            .degeneracy_candidate = false,
                            .history = {{order, 0.0}},
                            .convergence_estimate = 0.0});
  }

  int state = 0;
  for (const Bracketed& root : scan_roots(alpha, mode, order, options)) {
    const double beta = root.beta;
    std::vector<double> values = null_vector(alpha, mode, beta, order);
    // (A, B) with A seed_A + B seed_B equal to the two lowest free coefficients.
    const int low = mode.parity == Parity::even ? 0 : 1;
    const auto& seeds = kDefaultSeeds;
    const double v0 = values[static_cast<std::size_t>(low)];
    const double v1 = values[static_cast<std::size_t>(low + 1)];
    const double seed_det = seeds[0][0] * seeds[1][1] - seeds[1][0] * seeds[0][1];
    double raw_a = (v0 * seeds[1][1] - seeds[1][0] * v1) / seed_det;
    double raw_b = (seeds[0][0] * v1 - v0 * seeds[0][1]) / seed_det;
    const double raw_max = std::max(std::abs(raw_a), std::abs(raw_b));
    if (raw_max > 0.0) {
      raw_a /= raw_max;
      raw_b /= raw_max;
    }
    CoefficientSeries series(mode, std::move(values));
    const double res = residual(series, alpha, mode.m, beta, residual_grid).relative();

    std::vector<std::pair<int, double>> history;
    double estimate = std::numeric_limits<double>::quiet_NaN();
    if (options.history) {
      if (order - 2 >= 2) {
        if (auto lower = refine_near(alpha, mode, order - 2, beta, options)) {
          history.emplace_back(order - 2, *lower);
          estimate = std::abs(beta - *lower);
        }
      }
      history.emplace_back(order, beta);
      if (auto upper = refine_near(alpha, mode, order + 2, beta, options)) {
        history.emplace_back(order + 2, *upper);
        if (std::isnan(estimate)) estimate = std::abs(*upper - beta);
      }
    } else {
      history.emplace_back(order, beta);
    }

    out.push_back(Eigenpair{.mode = mode,
                            .state = ++state,
                            .beta = beta,
                            .trivial = false,
                            .series = std::move(series),
                            .mixing = {raw_a, raw_b},
                            .order = order,
                            .residual = res,
                            .converged = root.converged && res < options.residual_limit,
                            .degeneracy_candidate = false,
                            .history = std::move(history),
                            .convergence_estimate = estimate});
  }

  const double spacing = 10.0 * std::max(options.tolerance, 1e-10);
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (out[k].beta - out[k - 1].beta < spacing) {
      out[k].degeneracy_candidate = true;
      out[k - 1].degeneracy_candidate = true;
    }
  }
  return out;
}

std::vector<Eigenpair> find_spectrum(double alpha, int m,
                                     std::optional<Parity> parity, int order,
                                     const ScanOptions& options) {
  std::vector<Eigenpair> out;
  for (Parity p : {Parity::even, Parity::odd}) {
    if (parity && *parity != p) continue;
    auto sector = find_eigenvalues(alpha, ModeSpec{m, p}, order, options);
    std::move(sector.begin(), sector.end(), std::back_inserter(out));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Eigenpair& x, const Eigenpair& y) { return x.beta < y.beta; });
  return out;
}

}  // namespace torus
