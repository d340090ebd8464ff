#pragma once

#include <complex>
#include <vector>

#include "tubegeo/basis.hpp"

namespace tubegeo {

using Complex = std::complex<double>;
using CVec2 = std::array<Complex, 2>;

/// Parameters of a stationary disc of the tube over a convex basis.  The
/// boundary of the disc is recovered from the direction field
/// F(t) = 2 Re(e^{it} a) + b on the unit circle.
struct GeodesicParams {
  CVec2 a;  // a in C^2, nonzero
  Vec2 b;   // b in R^2
};

/// How the direction field wraps the circle of unit vectors.
enum class GeodesicTag {
  EmbeddedCircle,     // F/|F| is a diffeomorphism onto the circle
  FoldedArc,          // F/|F| sweeps a closed arc forth and back
  SemicircleJump,     // F vanishes once; the image is an open half-circle
  TwoPointAntipodal,  // F vanishes twice; the image is a two-point set
};

struct GeodesicClass {
  GeodesicTag tag;
  std::vector<double> singular_params;  // angles in [0,2pi) where F vanishes
};

const char* to_string(GeodesicTag tag);

/// F(t) = 2 Re(e^{it} a) + b.
Vec2 normal_vector(const GeodesicParams& params, double t);

/// Boundary value Re f(e^{it}): the point of the basis boundary whose outer
/// normal is F(t)/|F(t)|.  Throws std::domain_error within 1e-12 of a
/// singular angle.
BoundaryPoint boundary_real_part(const GeodesicParams& params, const ConvexBasis& basis,
                                 double t);

/// Classifies the direction field and locates its singular angles.
/// Throws std::domain_error when a = 0 or the field direction is constant.
GeodesicClass classify(const GeodesicParams& params);

/// Holomorphic map f on the unit disc with boundary real part given by
/// boundary_real_part, normalized by Im f(0) = 0.  Samples the boundary on
/// grid_size equispaced angles (offset by half a step when a singular angle
/// would hit a node) and evaluates the truncated power series obtained from
/// the discrete Fourier coefficients.
class PoissonExtension {
 public:
  PoissonExtension(const GeodesicParams& params, const ConvexBasis& basis, int grid_size);

  CVec2 evaluate(Complex lambda) const;  // requires |lambda| < 1

  /// Series value at e^{it}: the boundary trace of f, with the harmonic
  /// conjugate normalized by Im f(0) = 0.
  CVec2 boundary_value(double t) const;

  int grid_size() const { return grid_size_; }

 private:
  CVec2 eval_series(Complex lambda) const;

  int grid_size_;
  // coeffs_[c][m]: m-th power-series coefficient of coordinate c.
  std::array<std::vector<Complex>, 2> coeffs_;
};

/// One-shot form of PoissonExtension::evaluate.  Throws std::domain_error
/// when |lambda| >= 1 or grid_size < 64.
CVec2 extend_poisson(const GeodesicParams& params, const ConvexBasis& basis, Complex lambda,
                     int grid_size);

/// Boundary points with opposite outer normals.
struct AntipodalPair {
  BoundaryPoint x;
  BoundaryPoint y;
};

/// Stationary disc through the segment between antipodal boundary points:
/// f(lambda) = (x+y)/2 + ((y-x)/2)(2i/pi) log((1+lambda)/(1-lambda)).
/// Its real part stays on the open segment.  Requires |lambda| < 1.
CVec2 antipodal_geodesic(const AntipodalPair& pair, Complex lambda);

}  // namespace tubegeo
