#pragma once

#include <complex>
#include <vector>

#include "tubegeo/basis.hpp"

namespace tubegeo {

/// Tangent vector X + iY at the origin of the tube over the unit ball.
struct TangentVector {
  Vec2 X;
  Vec2 Y;
};

/// Invariants of a tangent vector under phase rotation and plane rotation:
/// alpha >= beta >= 0, alpha^2 + beta^2 = |X|^2 + |Y|^2, and
/// alpha*beta = |X1 Y2 - X2 Y1|.
struct ReducedDirection {
  double alpha;
  double beta;
};

/// Point (x, y) = psi(theta) on the boundary curve of the unit indicatrix,
/// theta in [0, pi/4].
struct IndicatrixSample {
  double theta;
  double x;
  double y;
};

/// Infinitesimal metric value r at the origin together with the parameter
/// theta of the extremal disc: r * psi(theta) = (alpha, beta).
struct KappaResult {
  double r;
  double theta;
  double alpha;
  double beta;
};

/// Wirtinger derivatives (d, dbar) of a planar harmonic map at 0.
struct WirtingerPair {
  std::complex<double> d;
  std::complex<double> dbar;
};

/// Reduces X + iY to the invariants (alpha, beta).  Throws
/// std::domain_error on the zero vector.
ReducedDirection reduce_direction(const TangentVector& v);

/// Phase theta0, normalized to (-pi/4, pi/4], such that e^{i theta0}(X+iY)
/// has orthogonal real and imaginary parts:
/// cos(2 theta0) <X,Y> + sin(2 theta0) (|X|^2-|Y|^2)/2 = 0.
double orthogonalize_phase(const TangentVector& v);

/// Derivative at 0 of the extremal disc with parameter theta; traces the
/// indicatrix boundary from (4/pi, 0) at theta=0 to (1, 1) at theta=pi/4.
/// Uses the elliptic-integral closed form away from pi/4 and switches to
/// quadrature within 0.03 of pi/4, where the closed form cancels.
Vec2 f_theta_prime(double theta);

/// Direct quadrature of the defining integral
/// (4/pi) * int_0^{pi/2} (cos(theta) cos^2 t, sin(theta) sin^2 t) / D dt,
/// D = sqrt(cos^2(theta) cos^2 t + sin^2(theta) sin^2 t).  Ground truth for
/// f_theta_prime.  Requires 0 < theta < pi/2 and grid_size >= 256.
Vec2 f_theta_prime_quadrature(double theta, int grid_size);

/// n points of the indicatrix boundary on a uniform theta grid over
/// [0, pi/4], endpoints included.  Requires n >= 2.
std::vector<IndicatrixSample> indicatrix_samples(int n);

/// Kobayashi-Royden metric of the tube over the unit ball at the origin.
/// Solves r * psi(theta) = (alpha, beta); the endpoint cases beta = 0
/// (r = alpha*pi/4) and alpha = beta (r = alpha) are returned directly.
KappaResult kappa_ball_origin(const TangentVector& v);

/// Membership in the closed unit indicatrix: kappa at (x, iy) is at most
/// 1 + 1e-10, after reflecting into the quadrant x >= y >= 0.
bool in_indicatrix(double x, double y);

/// Existence of a harmonic self-map of the disc fixing 0 with prescribed
/// Wirtinger derivatives d, dbar: tests (|d|+|dbar|, ||d|-|dbar||) against
/// the indicatrix.
bool schwarz_admissible(std::complex<double> d, std::complex<double> dbar);

/// Necessary bound |d| + |dbar| <= 4/pi.
bool schwarz_necessary(std::complex<double> d, std::complex<double> dbar);

/// Sufficient bound max(|d|, |dbar|) <= 2/pi.
bool schwarz_sufficient(std::complex<double> d, std::complex<double> dbar);

}  // namespace tubegeo
