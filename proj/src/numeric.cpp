#include "tubegeo/numeric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tubegeo {

namespace {

constexpr double kAgmThreshold = 1e-15;

// One AGM pass shared by K and E.  a_{n+1} = (a+b)/2, b_{n+1} = sqrt(ab),
// c_{n+1} = (a-b)/2; K = pi/(2 a_inf), E = K (1 - sum 2^{n-1} c_n^2).
struct AgmResult {
  double agm;
  double c_sum;  // sum over n >= 0 of 2^{n-1} c_n^2, with c_0 = k
};

AgmResult agm_iterate(double k) {
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  double c = k;
  double sum = 0.5 * c * c;
  double pow2 = 0.5;
  while (c > kAgmThreshold) {
    const double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += pow2 * c * c;
  }
  return {a, sum};
}

}  // namespace

double elliptic_K(double k) {
  if (!(k >= 0.0) || k >= 1.0)
    throw std::domain_error("elliptic_K: modulus must satisfy 0 <= k < 1");
  const AgmResult r = agm_iterate(k);
  return std::numbers::pi / (2.0 * r.agm);
}

double elliptic_E(double k) {
  if (!(k >= 0.0) || k > 1.0)
    throw std::domain_error("elliptic_E: modulus must satisfy 0 <= k <= 1");
  if (k == 1.0) return 1.0;
  const AgmResult r = agm_iterate(k);
  const double big_k = std::numbers::pi / (2.0 * r.agm);
  return big_k * (1.0 - r.c_sum);
}

double periodic_quadrature(std::span<const double> samples, double period) {
  if (samples.size() < 4)
    throw std::invalid_argument("periodic_quadrature: need at least 4 samples");
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum * period / static_cast<double>(samples.size());
}

double find_root_monotone(const std::function<double(double)>& g,
                          double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("find_root_monotone: lo >= hi");
  if (!(tol > 0.0)) throw std::invalid_argument("find_root_monotone: tol <= 0");
  double glo = g(lo);
  if (glo == 0.0) return lo;
  double ghi = g(hi);
  if (ghi == 0.0) return hi;
  if (glo * ghi > 0.0)
    throw std::invalid_argument("find_root_monotone: no sign change on [lo, hi]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at rounding resolution
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if (gm * glo < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      glo = gm;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::complex<double>>
fourier_coefficients(std::span<const double> samples, int max_mode,
                     double angle_offset) {
  const int n = static_cast<int>(samples.size());
  if (n < 1) throw std::invalid_argument("fourier_coefficients: empty samples");
  if (max_mode < 0) throw std::invalid_argument("fourier_coefficients: max_mode < 0");
  if (2 * max_mode > n)
    throw std::invalid_argument("fourier_coefficients: max_mode beyond Nyquist limit");

  // Exact twiddle table; indices (m*j) mod N avoid rotation drift.
  std::vector<std::complex<double>> twiddle(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * j / n;
    twiddle[j] = {std::cos(t), -std::sin(t)};
  }
  std::vector<std::complex<double>> coeff(max_mode + 1);
  for (int m = 0; m <= max_mode; ++m) {
    std::complex<double> acc = 0.0;
    int idx = 0;
    for (int j = 0; j < n; ++j) {
      acc += samples[j] * twiddle[idx];
      idx += m;
      if (idx >= n) idx -= n;
    }
    acc /= static_cast<double>(n);
    if (angle_offset != 0.0) {
      const double ph = -m * angle_offset;
      acc *= std::complex<double>(std::cos(ph), std::sin(ph));
    }
    coeff[m] = acc;
  }
  return coeff;
}

}  // namespace tubegeo
