#include "tubegeo/basis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tubegeo {

namespace {
constexpr double kBoundaryTol = 1e-12;
}

ConvexBasis ConvexBasis::ellipse(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw std::invalid_argument("ellipse semi-axes must be positive");
  }
  return ConvexBasis(BasisKind::Ellipse, p, q);
}

ConvexBasis ConvexBasis::parse(const std::string& text) {
  if (text == "ball") return unit_ball();
  const std::string prefix = "ellipse:";
  if (text.rfind(prefix, 0) == 0) {
    std::istringstream in(text.substr(prefix.size()));
    double p = 0.0, q = 0.0;
    char comma = 0;
    if ((in >> p >> comma >> q) && comma == ',' && in.eof()) {
      return ellipse(p, q);
    }
    throw std::invalid_argument("malformed ellipse axes: " + text);
  }
  throw std::invalid_argument("unknown basis: " + text);
}

double ConvexBasis::boundary_residual(Vec2 x) const {
  if (kind_ == BasisKind::UnitBall) return norm2(x) - 1.0;
  const double a = x[0] / p_, b = x[1] / q_;
  return a * a + b * b - 1.0;
}

Vec2 ConvexBasis::gauss_map(Vec2 x) const {
  if (std::abs(boundary_residual(x)) > kBoundaryTol) {
    throw std::domain_error("gauss_map: point is not on the boundary");
  }
  if (kind_ == BasisKind::UnitBall) return normalized(x);
  // Gradient of the defining function, normalized.
  return normalized({x[0] / (p_ * p_), x[1] / (q_ * q_)});
}

Vec2 ConvexBasis::gauss_inverse(Vec2 u) const {
  if (std::abs(norm2(u) - 1.0) > kBoundaryTol) {
    throw std::domain_error("gauss_inverse: direction must be a unit vector");
  }
  if (kind_ == BasisKind::UnitBall) return u;
  const Vec2 g = {p_ * p_ * u[0], q_ * q_ * u[1]};
  const double scale = std::sqrt(p_ * p_ * u[0] * u[0] + q_ * q_ * u[1] * u[1]);
  return (1.0 / scale) * g;
}

std::pair<Vec2, Vec2> ConvexBasis::antipodal_pair(Vec2 u) const {
  return {gauss_inverse(u), gauss_inverse(-u)};
}

bool ConvexBasis::contains(Vec2 x) const { return boundary_residual(x) < 0.0; }

bool ConvexBasis::contains_closure(Vec2 x, double tol) const {
  return boundary_residual(x) <= tol;
}

}  // namespace tubegeo
