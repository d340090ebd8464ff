#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tubegeo/basis.hpp"
#include "tubegeo/kobayashi.hpp"

namespace tubegeo {

using Complex = std::complex<double>;

/// Values of a continuous map T -> R^2 on a uniform angular grid
/// (sample j sits at angle 2*pi*j/grid_size).
struct BoundaryMap {
  std::vector<Vec2> samples;
  int grid_size;  // == samples.size(), >= 64, a power of two
};

/// Harmonic map on the disc stored as a truncated Fourier series with
/// M = grid_size/2 - 1 modes per channel: u(re^{ip}) = sum over |k| <= M of
/// c_k r^|k| e^{ikp}, with c_{-k} = conj(c_k) since u is real.
class HarmonicField {
 public:
  /// coeffs[ch][k] is the mode-k coefficient of channel ch, k = 0..M.
  explicit HarmonicField(std::array<std::vector<Complex>, 2> coeffs);

  /// u(lambda).  Requires |lambda| <= 1 + 1e-9 (the series is a polynomial
  /// in lambda but only represents the extension on the closed disc).
  Vec2 value(Complex lambda) const;

  /// Derivatives (g1', g2') of the holomorphic completions g_ch with
  /// u_ch = Re g_ch; then u_x = Re g', u_y = -Im g' per channel.
  std::array<Complex, 2> completion_derivative(Complex lambda) const;

  int max_mode() const { return static_cast<int>(coeffs_[0].size()) - 1; }
  const std::vector<Complex>& coefficients(int channel) const { return coeffs_[channel]; }

 private:
  std::array<std::vector<Complex>, 2> coeffs_;
};

/// Field whose boundary values interpolate the samples (up to the dropped
/// Nyquist mode) and whose value at 0 is the sample mean.  Validates the
/// BoundaryMap invariants.
HarmonicField harmonic_extend(const BoundaryMap& bmap);

/// Wirtinger derivatives at lambda, |lambda| < 1, under the convention
/// d = (u1_x - u2_y + i(u2_x + u1_y))/2, dbar = (u1_x + u2_y + i(u2_x - u1_y))/2.
/// The identity map has d = 0, dbar = 1 under this sign choice, and
/// |dbar|^2 - |d|^2 equals the Jacobian determinant.
WirtingerPair wirtinger_at(const HarmonicField& field, Complex lambda);

/// det Du = u1_x u2_y - u1_y u2_x at lambda, |lambda| < 1.
double jacobian_det(const HarmonicField& field, Complex lambda);

/// Cached values of a field on a polar grid: r_i = (i+0.5)/resolution,
/// phi_j = 2*pi*j/resolution.  Shared by the preimage counter and the
/// target sweep of bivalence_experiment, which would otherwise rebuild the
/// grid per target.
class FieldGrid {
 public:
  FieldGrid(const HarmonicField& field, int resolution);

  /// Number of preimage clusters of the target: grid points with
  /// ||u - target|| < radius_tol, connected within 2 grid steps, refined
  /// by local descent and merged when the refined minima coincide.
  int count_preimages(Vec2 target, double radius_tol) const;

  int resolution() const { return resolution_; }
  Vec2 value_at(int i, int j) const { return values_[i * resolution_ + j]; }
  Complex point_at(int i, int j) const;

 private:
  const HarmonicField& field_;
  int resolution_;
  std::vector<Vec2> values_;
};

/// One-shot preimage count over a fresh grid.  Requires resolution >= 64.
int count_preimages(const HarmonicField& field, Vec2 target, int resolution,
                    double radius_tol);

/// Points of the disc where |det Du| < tol, thinned to one point per
/// spatial box and ordered by nearest-neighbor chaining.  Empty when the
/// field is a diffeomorphism.  Requires resolution >= 128.
std::vector<Complex> degeneracy_curve(const HarmonicField& field, int resolution,
                                      double tol);

struct BivalenceReport {
  int max_preimage_count;
  std::vector<Complex> degeneracy_points;
  std::vector<Vec2> excluded_region_witnesses;
  std::vector<double> endpoint_gaps;  // chain ends vs detected fold points
};

/// Target sweep + degeneracy chain + excluded-region probes for boundary
/// data folding a closed arc onto itself: counts preimages of 500
/// deterministic targets drawn from the image, detects the fold points on
/// the circle from the boundary derivative, and probes the region between
/// the image of the chain and the chord joining the fold images.
/// Requires resolution >= 128.
BivalenceReport bivalence_experiment(const BoundaryMap& bmap, int resolution);

/// Report serialized as JSON with fields max_preimage_count,
/// degeneracy_points, excluded_region_witnesses, endpoint_gaps.
std::string to_json(const BivalenceReport& report);

}  // namespace tubegeo
