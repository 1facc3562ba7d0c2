#pragma once

// Eigenvalues of the angular equation from the Fourier recursions.
//
// Two routes:
//  * m = 0 polynomial route: the numerator of d_n (three-term recursion) is a
//    polynomial of degree n - 1 in beta; its roots, warm-started from the
//    roots one order lower, approximate the spectrum.
//  * determinant route (any m): two five-term series A, B with independent
//    seeds; beta is an eigenvalue when A d^A_N + B d^B_N = 0 and
//    A d^A_{N+1} + B d^B_{N+1} = 0 have a nontrivial solution.
//
// Eigenvectors come from the null vector of the truncated rows rather than
// from A and B directly; at small alpha the two series nearly cancel.

#include <array>
#include <optional>
#include <vector>

#include "torus/model.hpp"
#include "torus/recursion.hpp"

namespace torus {

struct BetaPolynomial {
  std::vector<double> coefficients;  // ascending powers of beta
  int index = 0;                     // n of the coefficient d_n
  Parity parity = Parity::even;
  int m = 0;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  double operator()(double beta) const;
  double derivative(double beta) const;
};

// prod_{k=1}^{n-1} (k (k + 1) - beta): d_n = P_n(beta) / D_n(beta) for a unit
// seed.
double coefficient_denominator(int n, double beta);

// Numerators P_1 .. P_N of the three-term series with unit seed
// (d_0 = 1 for even, d_1 = 1 for odd parity).
std::vector<BetaPolynomial> coefficient_polynomials(double alpha, Parity parity,
                                                    int order);

struct TrackedRoot {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

struct RootSet {
  int index = 0;  // polynomial index n
  std::vector<TrackedRoot> roots;  // ascending

  std::vector<double> values() const;
};

// Roots of each polynomial, seeded by the roots one order lower plus one new
// seed just above (n - 1)^2, refined by Newton iteration with deflation
// against roots already accepted at that order. Roots that fail to converge
// are kept and flagged.
std::vector<RootSet> roots_warm_started(const std::vector<BetaPolynomial>& polys);

using SeedPair = std::array<std::array<double, 2>, 2>;

// (1, 1) and (1, -1) in the lowest free coefficients of the sector.
inline constexpr SeedPair kDefaultSeeds{{{1.0, 1.0}, {1.0, -1.0}}};

struct SeriesPair {
  CoefficientSeries a;
  CoefficientSeries b;
  SeedPair seeds;
};

// Throws std::invalid_argument when the seed matrix is singular.
SeriesPair make_series_pair(double alpha, ModeSpec mode, double beta, int order,
                            const SeedPair& seeds = kDefaultSeeds);

struct DeterminantValue {
  double value = 0.0;
  // beta hit a recursion pole or both columns vanished; value is meaningless.
  bool degenerate = false;
};

// det [[d^A_N, d^B_N], [d^A_{N+1}, d^B_{N+1}]] divided by the product of the
// column norms and multiplied by the sign of every recursion divisor, so the
// result is scale free, lies in [-1, 1] and does not change sign across the
// poles of the march. Requires N >= 2.
DeterminantValue determinant(double alpha, ModeSpec mode, double beta,
                             int order, const SeedPair& seeds = kDefaultSeeds);

struct ScanOptions {
  double beta_max = 25.0;
  double scan_step = 0.02;
  double tolerance = 1e-12;     // bisection width
  int max_bisections = 60;
  double residual_limit = 1e-3;  // relative residual for `converged`
  bool history = true;           // recompute each root at N - 2 and N + 2
};

// Scan default upper bound for K requested states.
double default_beta_max(int states);

struct Eigenpair {
  ModeSpec mode;
  int state = 0;  // 1-based per (m, parity); 0 for the trivial mode
  double beta = 0.0;
  bool trivial = false;
  CoefficientSeries series;
  std::array<double, 2> mixing{1.0, 0.0};  // (A, B) for kDefaultSeeds, max |.| = 1
  int order = 0;
  double residual = 0.0;  // relative to max |psi|
  bool converged = false;
  bool degeneracy_candidate = false;
  // (order, beta) for N - 2, N, N + 2 where available.
  std::vector<std::pair<int, double>> history;
  double convergence_estimate = 0.0;  // |beta(N) - beta(N - 2)|
};

// Every determinant root in [0, beta_max] for one (m, parity) sector, sorted
// ascending. For m = 0 even the exact constant mode at beta = 0 is reported
// first with trivial = true.
std::vector<Eigenpair> find_eigenvalues(double alpha, ModeSpec mode, int order,
                                        const ScanOptions& options = {});

// Roots only (no eigenvector assembly), used for table columns.
std::vector<double> determinant_roots(double alpha, ModeSpec mode, int order,
                                      const ScanOptions& options = {});

// Both sectors (or one) merged and sorted by beta.
std::vector<Eigenpair> find_spectrum(double alpha, int m,
                                     std::optional<Parity> parity, int order,
                                     const ScanOptions& options = {});

}  // namespace torus
