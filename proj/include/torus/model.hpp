#pragma once

// Torus geometry and the dimensionless statement of the angular problem.
//
// Surface: x = (R + a sin(theta)) cos(phi), y = (R + a sin(theta)) sin(phi),
// z = a cos(theta). With hbar = mass = 1 and H = -(1/2) Laplacian, separating
// psi(theta) exp(i m phi) leaves an eigenproblem in theta whose only geometry
// parameter is alpha = a / R and whose eigenvalue is beta = 2 E a^2.

#include <string_view>

namespace torus {

enum class Parity { even, odd };

std::string_view to_string(Parity parity);
Parity parse_parity(std::string_view text);

// Azimuthal quantum number and symmetry sector under theta -> pi - theta.
struct ModeSpec {
  int m = 0;
  Parity parity = Parity::even;

  friend bool operator==(const ModeSpec&, const ModeSpec&) = default;
};

class TorusShape {
 public:
  // Throws std::invalid_argument unless a > 0, R > 0 and a / R < 1.
  TorusShape(double minor_radius, double major_radius);

  // a = minor_radius, R = minor_radius / alpha.
  static TorusShape from_alpha(double alpha, double minor_radius = 1.0);

  double minor_radius() const { return minor_radius_; }
  double major_radius() const { return major_radius_; }
  double alpha() const { return alpha_; }

 private:
  double minor_radius_;
  double major_radius_;
  double alpha_;
};

struct SpectralPoint {
  double beta = 0.0;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Throws std::invalid_argument unless 0 < alpha < 1.
void require_alpha(double alpha);

// 1 + alpha sin(theta): theta-dependent part of sqrt(g) / (a R).
double metric_factor(double theta, const TorusShape& shape);
double metric_factor(double theta, double alpha);

Point3 embed(double theta, double phi, const TorusShape& shape);

// E = beta / (2 a^2). Throws std::invalid_argument for a <= 0.
double beta_to_energy(SpectralPoint point, double minor_radius);

}  // namespace torus
