#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace tubegeo {

/// Complete elliptic integral of the first kind,
/// K(k) = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t), Legendre convention.
/// Computed by the arithmetic-geometric mean; valid for 0 <= k < 1.
double elliptic_K(double k);

/// Complete elliptic integral of the second kind,
/// E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt, Legendre convention.
/// Valid for 0 <= k <= 1; E(1) = 1.
double elliptic_E(double k);

/// Trapezoidal rule for a periodic function sampled on a uniform grid
/// covering exactly one period (right endpoint excluded). Spectrally
/// accurate for smooth periodic integrands. Requires at least 4 samples.
double periodic_quadrature(std::span<const double> samples, double period);

/// Bisection for a continuous, strictly monotone g with a sign change on
/// [lo, hi]. Returns the midpoint of a bracket of width <= tol around the
/// root. Throws std::invalid_argument when g(lo)*g(hi) > 0.
double find_root_monotone(const std::function<double(double)>& g,
                          double lo, double hi, double tol);

/// Discrete Fourier coefficients c_m = (1/N) sum_j samples[j] e^{-i m t_j}
/// for m = 0..max_mode, where t_j = angle_offset + 2*pi*j/N. For a smooth
/// periodic function these approximate its Fourier coefficients.
std::vector<std::complex<double>>
fourier_coefficients(std::span<const double> samples, int max_mode,
                     double angle_offset = 0.0);

}  // namespace tubegeo
