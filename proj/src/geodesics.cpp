#include "tubegeo/geodesics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tubegeo/numeric.hpp"

namespace tubegeo {

namespace {

constexpr double kSingularTol = 1e-12;  // absolute tolerance on |F(t)|
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

}  // namespace

const char* to_string(GeodesicTag tag) {
  switch (tag) {
    case GeodesicTag::EmbeddedCircle: return "EmbeddedCircle";
    case GeodesicTag::FoldedArc: return "FoldedArc";
    case GeodesicTag::SemicircleJump: return "SemicircleJump";
    case GeodesicTag::TwoPointAntipodal: return "TwoPointAntipodal";
  }
  return "unknown";
}

Vec2 normal_vector(const GeodesicParams& params, double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {2.0 * (c * params.a[0].real() - s * params.a[0].imag()) + params.b[0],
          2.0 * (c * params.a[1].real() - s * params.a[1].imag()) + params.b[1]};
}

BoundaryPoint boundary_real_part(const GeodesicParams& params, const ConvexBasis& basis,
                                 double t) {
  const Vec2 f = normal_vector(params, t);
  const double len = norm(f);
  if (len <= kSingularTol) {
    throw std::domain_error("boundary_real_part: direction field vanishes at this angle");
  }
  return basis.gauss_inverse((1.0 / len) * f);
}

GeodesicClass classify(const GeodesicParams& params) {
  const Vec2 ra = {params.a[0].real(), params.a[1].real()};
  const Vec2 ia = {params.a[0].imag(), params.a[1].imag()};
  const double a2 = norm2(ra) + norm2(ia);
  if (a2 == 0.0) throw std::domain_error("classify: a must be nonzero");

  const double det = cross(ra, ia);
  if (std::abs(det) > 1e-12 * a2) {
    // F traces an ellipse centered at b.  It passes through the origin
    // exactly when (cos t, -sin t) = w for the solution w of the linear
    // system, i.e. when |w| = 1; the candidate angle is read off from w.
    const Vec2 w = {(ia[1] * -params.b[0] - ia[0] * -params.b[1]) / (2.0 * det),
                    (ra[0] * -params.b[1] - ra[1] * -params.b[0]) / (2.0 * det)};
    const double t0 = wrap_angle(std::atan2(-w[1], w[0]));
    if (norm(normal_vector(params, t0)) <= kSingularTol) {
      return {GeodesicTag::SemicircleJump, {t0}};
    }
    return {norm(w) < 1.0 ? GeodesicTag::EmbeddedCircle : GeodesicTag::FoldedArc, {}};
  }

  // Re a and Im a are colinear: F traces a segment along the direction v.
  const Vec2 v = normalized(norm2(ra) >= norm2(ia) ? ra : ia);
  const double p = dot(ra, v), q = dot(ia, v), r = dot(params.b, v);
  const Vec2 perp = params.b - r * v;
  const double radius = 2.0 * std::hypot(p, q);
  const double phase = std::atan2(q, p);
  if (norm(perp) > 1e-12 * (radius + norm(params.b))) {
    return {GeodesicTag::FoldedArc, {}};
  }
  if (radius - std::abs(r) <= 1e-12 * (radius + std::abs(r))) {
    throw std::domain_error("classify: direction field is constant (singleton image)");
  }
  const double spread = std::acos(-r / radius);
  double t1 = wrap_angle(spread - phase);
  double t2 = wrap_angle(-spread - phase);
  if (t2 < t1) std::swap(t1, t2);
  return {GeodesicTag::TwoPointAntipodal, {t1, t2}};
}

PoissonExtension::PoissonExtension(const GeodesicParams& params, const ConvexBasis& basis,
                                   int grid_size)
    : grid_size_(grid_size) {
  if (grid_size < 64) throw std::invalid_argument("extend_poisson: grid_size must be >= 64");
  const GeodesicClass cls = classify(params);

  const double step = kTwoPi / grid_size;
  double offset = 0.0;
  for (double factor : {0.0, 0.5, 0.25, 0.125}) {
    offset = factor * step;
    bool clear = true;
    for (double s : cls.singular_params) {
      if (std::abs(std::remainder(s - offset, step)) < 1e-9) clear = false;
    }
    if (clear) break;
  }

  std::array<std::vector<double>, 2> samples;
  samples[0].resize(grid_size);
  samples[1].resize(grid_size);
  for (int j = 0; j < grid_size; ++j) {
    const Vec2 h = boundary_real_part(params, basis, offset + step * j);
    samples[0][j] = h[0];
    samples[1][j] = h[1];
  }
  const int max_mode = grid_size / 2 - 1;
  coeffs_[0] = fourier_coefficients(samples[0], max_mode, offset);
  coeffs_[1] = fourier_coefficients(samples[1], max_mode, offset);
}

CVec2 PoissonExtension::eval_series(Complex lambda) const {
  CVec2 out;
  for (int c = 0; c < 2; ++c) {
    const auto& a = coeffs_[c];
    Complex acc = a.back();
    for (size_t m = a.size() - 2; m >= 1; --m) acc = a[m] + lambda * acc;
    out[c] = a[0] + 2.0 * lambda * acc;
  }
  return out;
}

CVec2 PoissonExtension::evaluate(Complex lambda) const {
  if (std::abs(lambda) >= 1.0) {
    throw std::domain_error("extend_poisson: |lambda| must be < 1");
  }
  return eval_series(lambda);
}

CVec2 PoissonExtension::boundary_value(double t) const {
  return eval_series(Complex(std::cos(t), std::sin(t)));
}

CVec2 extend_poisson(const GeodesicParams& params, const ConvexBasis& basis, Complex lambda,
                     int grid_size) {
  if (std::abs(lambda) >= 1.0) {
    throw std::domain_error("extend_poisson: |lambda| must be < 1");
  }
  return PoissonExtension(params, basis, grid_size).evaluate(lambda);
}

CVec2 antipodal_geodesic(const AntipodalPair& pair, Complex lambda) {
  if (std::abs(lambda) >= 1.0) {
    throw std::domain_error("antipodal_geodesic: |lambda| must be < 1");
  }
  // (1+lambda)/(1-lambda) maps the disc to the right half-plane, so the
  // principal log is smooth and the scalar below has real part in (-1,1).
  const Complex scale =
      (2.0 * Complex(0.0, 1.0) / std::numbers::pi) * std::log((1.0 + lambda) / (1.0 - lambda));
  const Vec2 mid = 0.5 * (pair.x + pair.y);
  const Vec2 half = 0.5 * (pair.y - pair.x);
  return {mid[0] + scale * half[0], mid[1] + scale * half[1]};
}

}  // namespace tubegeo
