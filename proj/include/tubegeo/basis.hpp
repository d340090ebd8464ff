#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>

namespace tubegeo {

using Vec2 = std::array<double, 2>;

/// Point on the boundary of a convex basis (plain coordinates; the basis
/// operations validate the boundary equation where it matters).
using BoundaryPoint = Vec2;

inline double dot(Vec2 a, Vec2 b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double cross(Vec2 a, Vec2 b) { return a[0] * b[1] - a[1] * b[0]; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator-(Vec2 a) { return {-a[0], -a[1]}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a[0], s * a[1]}; }
inline Vec2 normalized(Vec2 a) { return (1.0 / norm(a)) * a; }

enum class BasisKind { UnitBall, Ellipse };

/// Planar convex basis of a tube domain: the open unit ball or an
/// axis-aligned ellipse x^2/p^2 + y^2/q^2 < 1.  Both are bounded, strongly
/// convex and symmetric around the origin, so the Gauss map (unit outer
/// normal on the boundary) is a diffeomorphism onto the circle with a
/// closed-form inverse.
class ConvexBasis {
 public:
  static ConvexBasis unit_ball() { return ConvexBasis(BasisKind::UnitBall, 1.0, 1.0); }
  static ConvexBasis ellipse(double p, double q);

  /// Parses "ball" or "ellipse:p,q".
  static ConvexBasis parse(const std::string& text);

  BasisKind kind() const { return kind_; }
  double semi_p() const { return p_; }
  double semi_q() const { return q_; }

  /// Residual of the defining equation of the boundary at x
  /// (|x|^2 - 1 for the ball, x1^2/p^2 + x2^2/q^2 - 1 for the ellipse).
  double boundary_residual(Vec2 x) const;

  /// Unit outer normal at a boundary point x.  Throws std::domain_error
  /// when x misses the boundary equation by more than 1e-12.
  Vec2 gauss_map(Vec2 x) const;

  /// Unique boundary point whose outer normal is the unit vector u.
  /// Throws std::domain_error on non-unit input (tolerance 1e-12).
  Vec2 gauss_inverse(Vec2 u) const;

  /// Boundary points (x, y) with normal(x) = u and normal(y) = -u.
  std::pair<Vec2, Vec2> antipodal_pair(Vec2 u) const;

  /// True iff x lies in the open basis.
  bool contains(Vec2 x) const;

  /// Membership with a cushion on the boundary equation, for range checks
  /// on values that are only accurate to quadrature tolerance.
  bool contains_closure(Vec2 x, double tol) const;

 private:
  ConvexBasis(BasisKind kind, double p, double q) : kind_(kind), p_(p), q_(q) {}

  BasisKind kind_;
  double p_, q_;
};

}  // namespace tubegeo
