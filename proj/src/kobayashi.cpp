#include "tubegeo/kobayashi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tubegeo/numeric.hpp"

namespace tubegeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuarterPi = kPi / 4.0;

// Inside this distance of pi/4 the closed form divides two vanishing
// quantities; the quadrature evaluator stays accurate there.
constexpr double kSwitchZone = 0.03;
constexpr int kSwitchGrid = 2048;

}  // namespace

ReducedDirection reduce_direction(const TangentVector& v) {
  const double nx = norm2(v.X), ny = norm2(v.Y);
  if (nx + ny == 0.0) throw std::domain_error("reduce_direction: zero vector");
  const double inner = dot(v.X, v.Y);
  const double disc = std::sqrt(4.0 * inner * inner + (nx - ny) * (nx - ny));
  const double a2 = 0.5 * (nx + ny) + 0.5 * disc;
  const double b2 = std::max(0.0, 0.5 * (nx + ny) - 0.5 * disc);
  return {std::sqrt(a2), std::sqrt(b2)};
}

double orthogonalize_phase(const TangentVector& v) {
  const double nx = norm2(v.X), ny = norm2(v.Y);
  if (nx + ny == 0.0) throw std::domain_error("orthogonalize_phase: zero vector");
  const double inner = dot(v.X, v.Y);
  double theta = 0.5 * std::atan2(-inner, 0.5 * (nx - ny));
  // Solutions repeat mod pi/2; report the representative in (-pi/4, pi/4].
  if (theta > kQuarterPi) theta -= 0.5 * kPi;
  if (theta <= -kQuarterPi) theta += 0.5 * kPi;
  return theta;
}

Vec2 f_theta_prime(double theta) {
  if (!(theta >= 0.0) || theta > kQuarterPi) {
    throw std::domain_error("f_theta_prime: theta must lie in [0, pi/4]");
  }
  if (theta == 0.0) return {4.0 / kPi, 0.0};
  if (kQuarterPi - theta < kSwitchZone) {
    return f_theta_prime_quadrature(theta, kSwitchGrid);
  }
  const double t = std::tan(theta);
  const double t2 = t * t;
  if (t2 < 1e-16) {
    // 1 - t^2 rounds to 1 here; K(k) ~ log(4/t) and E(k) ~ 1.
    return {4.0 / kPi, (4.0 / kPi) * t * (std::log(4.0 / t) - 1.0)};
  }
  const double k = std::sqrt((1.0 - t) * (1.0 + t));
  const double big_k = elliptic_K(k);
  const double big_e = elliptic_E(k);
  const double denom = 1.0 - t2;
  return {(4.0 / kPi) * (big_e - t2 * big_k) / denom,
          (4.0 / kPi) * t * (big_k - big_e) / denom};
}

Vec2 f_theta_prime_quadrature(double theta, int grid_size) {
  if (!(theta > 0.0) || !(theta < 0.5 * kPi)) {
    throw std::domain_error("f_theta_prime_quadrature: theta must lie in (0, pi/2)");
  }
  if (grid_size < 256) {
    throw std::invalid_argument("f_theta_prime_quadrature: grid_size must be >= 256");
  }
  const double c = std::cos(theta), s = std::sin(theta);
  const double h = 0.5 * kPi / grid_size;
  // The integrand extends to a smooth pi-periodic even function, so the
  // trapezoid rule with halved endpoints converges spectrally.
  double sum_x = 0.0, sum_y = 0.0;
  for (int j = 0; j <= grid_size; ++j) {
    const double ct = std::cos(h * j), st = std::sin(h * j);
    const double c2 = ct * ct, s2 = st * st;
    const double d = std::sqrt(c * c * c2 + s * s * s2);
    const double w = (j == 0 || j == grid_size) ? 0.5 : 1.0;
    sum_x += w * c * c2 / d;
    sum_y += w * s * s2 / d;
  }
  return {(4.0 / kPi) * h * sum_x, (4.0 / kPi) * h * sum_y};
}

std::vector<IndicatrixSample> indicatrix_samples(int n) {
  if (n < 2) throw std::invalid_argument("indicatrix_samples: need n >= 2");
  std::vector<IndicatrixSample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double theta = kQuarterPi * (static_cast<double>(i) / (n - 1));
    const Vec2 p = f_theta_prime(theta);
    out.push_back({theta, p[0], p[1]});
  }
  return out;
}

KappaResult kappa_ball_origin(const TangentVector& v) {
  const ReducedDirection rd = reduce_direction(v);
  if (rd.beta == 0.0) {
    return {rd.alpha * kQuarterPi, 0.0, rd.alpha, rd.beta};
  }
  if (rd.beta >= rd.alpha) {
    return {rd.alpha, kQuarterPi, rd.alpha, rd.beta};
  }
  const double ratio = rd.beta / rd.alpha;
  // psi2/psi1 increases from 0 to 1 over [0, pi/4], so the root is unique.
  const double theta = find_root_monotone(
      [ratio](double th) {
        const Vec2 p = f_theta_prime(th);
        return p[1] / p[0] - ratio;
      },
      0.0, kQuarterPi, 1e-12);
  const Vec2 p = f_theta_prime(theta);
  return {rd.alpha / p[0], theta, rd.alpha, rd.beta};
}

bool in_indicatrix(double x, double y) {
  x = std::abs(x);
  y = std::abs(y);
  if (x == 0.0 && y == 0.0) return true;
  const KappaResult k = kappa_ball_origin({{x, 0.0}, {0.0, y}});
  return k.r <= 1.0 + 1e-10;
}

bool schwarz_admissible(std::complex<double> d, std::complex<double> dbar) {
  const double p = std::abs(d), q = std::abs(dbar);
  return in_indicatrix(p + q, std::abs(p - q));
}

bool schwarz_necessary(std::complex<double> d, std::complex<double> dbar) {
  return std::abs(d) + std::abs(dbar) <= 4.0 / kPi + 1e-12;
}

bool schwarz_sufficient(std::complex<double> d, std::complex<double> dbar) {
  return std::max(std::abs(d), std::abs(dbar)) <= 2.0 / kPi + 1e-12;
}

}  // namespace tubegeo
