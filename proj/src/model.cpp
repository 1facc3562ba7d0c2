#include "torus/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace torus {

std::string_view to_string(Parity parity) {
  return parity == Parity::even ? "even" : "odd";
}

Parity parse_parity(std::string_view text) {
  if (text == "even") return Parity::even;
  if (text == "odd") return Parity::odd;
  throw std::invalid_argument("unknown parity '" + std::string(text) + "'");
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1), got " +
                                std::to_string(alpha));
  }
}

TorusShape::TorusShape(double minor_radius, double major_radius)
    : minor_radius_(minor_radius), major_radius_(major_radius), alpha_(0.0) {
  if (!(minor_radius > 0.0) || !(major_radius > 0.0)) {
    throw std::invalid_argument("torus radii must be positive");
  }
  alpha_ = minor_radius / major_radius;
  if (!(alpha_ < 1.0)) {
    throw std::invalid_argument(
        "minor radius must be smaller than major radius (self-intersecting "
        "surface)");
  }
}

TorusShape TorusShape::from_alpha(double alpha, double minor_radius) {
  require_alpha(alpha);
  return TorusShape(minor_radius, minor_radius / alpha);
}

double metric_factor(double theta, double alpha) {
  return 1.0 + alpha * std::sin(theta);
}

double metric_factor(double theta, const TorusShape& shape) {
  return metric_factor(theta, shape.alpha());
}

Point3 embed(double theta, double phi, const TorusShape& shape) {
  const double a = shape.minor_radius();
  const double rho = shape.major_radius() + a * std::sin(theta);
  return {rho * std::cos(phi), rho * std::sin(phi), a * std::cos(theta)};
}

double beta_to_energy(SpectralPoint point, double minor_radius) {
  if (!(minor_radius > 0.0)) {
    throw std::invalid_argument("minor radius must be positive");
  }
  return point.beta / (2.0 * minor_radius * minor_radius);
}

}  // namespace torus
