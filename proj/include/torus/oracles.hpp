#pragma once

// Independent checks on the Fourier eigenvalues.
//
// Shooting: integrate the angular equation with fixed-step RK4 from
// theta = -pi/2 (psi = 1, psi' = 0 for even; psi = 0, psi' = 1 for odd parity)
// forward to pi/2 and backward to -3pi/2. An eigenvalue makes psi' (even) or
// psi (odd) vanish at pi/2 on both branches.
//
// Finite differences: flux-form central differences of
//   -(w psi')' + m^2 alpha^2 / w psi = beta w psi,  w = 1 + alpha sin(theta),
// on a uniform periodic grid, symmetrized with W^{1/2}.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torus/model.hpp"

namespace torus {

struct OracleConfig {
  int rk_steps = 4096;   // RK4 steps per pi of integration
  int fd_grid = 1024;    // points on [0, 2 pi)
  double matching_tolerance = 1e-8;  // forward/backward consistency, relative

  // Throws std::invalid_argument: rk_steps >= 100, fd_grid even in [64, 2048].
  void validate() const;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BracketError : public OracleError {
 public:
  using OracleError::OracleError;
};

struct ShootingState {
  double theta = 0.0;
  double psi = 0.0;
  double dpsi = 0.0;
};

// Integrates from -pi/2 to `theta_end` (either direction) in
// ceil(|span| / pi * rk_steps) equal RK4 steps.
ShootingState integrate(double alpha, int m, double beta, Parity parity,
                        double theta_end, const OracleConfig& config);

// psi'(pi/2) for even, psi(pi/2) for odd parity, forward branch. The backward
// branch to -3pi/2 is integrated as well and must agree.
double rk_mismatch(double alpha, int m, double beta, Parity parity,
                   const OracleConfig& config = {});

// Bisection on the mismatch down to floating-point resolution.
// Throws BracketError when the mismatch does not change sign on the bracket.
double rk_find_eigenvalue(double alpha, int m, Parity parity, double beta_lo,
                          double beta_hi, const OracleConfig& config = {});

// Sign changes of the mismatch on [0, beta_max], refined.
std::vector<double> rk_spectrum(double alpha, int m, Parity parity,
                                double beta_max, double scan_step,
                                const OracleConfig& config = {});

struct ThetaValue {
  double theta = 0.0;
  double psi = 0.0;
};

// Trajectory values at the requested angles (forward branch for
// theta >= -pi/2 after wrapping into [-3pi/2, pi/2), backward otherwise).
std::vector<ThetaValue> rk_sample(double alpha, int m, double beta,
                                  Parity parity, const std::vector<double>& thetas,
                                  const OracleConfig& config = {});

struct FdEigenvalue {
  double beta = 0.0;          // at the requested grid
  double extrapolated = 0.0;  // Richardson from grid / 2
  double error_estimate = 0.0;
  std::optional<Parity> parity;  // set when eigenvectors were requested
};

// k lowest eigenvalues (both parities together), ascending.
// Throws OracleError when the dense eigensolver fails.
std::vector<FdEigenvalue> fd_spectrum(double alpha, int m, int grid_size,
                                      int k_lowest, bool classify_parity = false);

struct FdEigenfunction {
  double beta = 0.0;
  Parity parity = Parity::even;
  std::vector<ThetaValue> samples;  // psi on the grid, max |psi| = 1
};

// Eigenfunctions of one parity sector on the grid, ascending in beta.
std::vector<FdEigenfunction> fd_eigenfunctions(double alpha, int m, int grid_size,
                                               Parity parity, int k_lowest);

}  // namespace torus
