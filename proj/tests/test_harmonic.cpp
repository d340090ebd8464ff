#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "tubegeo/harmonic.hpp"
#include "tubegeo/kobayashi.hpp"

using tubegeo::BoundaryMap;
using tubegeo::Complex;
using tubegeo::HarmonicField;
using tubegeo::Vec2;

namespace {

const double kPi = std::acos(-1.0);

BoundaryMap sampled_map(const std::function<Vec2(double)>& f, int n) {
  BoundaryMap bmap;
  bmap.grid_size = n;
  bmap.samples.resize(n);
  for (int j = 0; j < n; ++j) bmap.samples[j] = f(2.0 * kPi * j / n);
  return bmap;
}

Vec2 identity_circle(double t) { return {std::cos(t), std::sin(t)}; }

Vec2 reversed_circle(double t) { return {std::cos(t), -std::sin(t)}; }

// Arc of the upper unit half-circle traversed forth and back: x runs over
// [-2,2]/sqrt(4cos^2+1) twice per period, so the extension is two-to-one.
Vec2 folded_arc(double t) {
  const double c = 2.0 * std::cos(t);
  const double len = std::sqrt(c * c + 1.0);
  return {c / len, 1.0 / len};
}

// Interior value by Poisson kernel quadrature on a dense grid.
Vec2 poisson_oracle(const std::function<Vec2(double)>& f, Complex z, int n = 65536) {
  const double r = std::abs(z);
  const double phi = std::arg(z);
  Vec2 acc{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * kPi * j / n;
    const double kernel =
        (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(phi - t) + r * r);
    const Vec2 h = f(t);
    acc[0] += kernel * h[0];
    acc[1] += kernel * h[1];
  }
  acc[0] /= n;
  acc[1] /= n;
  return acc;
}

}  // namespace

TEST_CASE("harmonic_extend validates the boundary map") {
  const BoundaryMap good = sampled_map(identity_circle, 64);
  CHECK_NOTHROW(tubegeo::harmonic_extend(good));

  BoundaryMap bad = good;
  bad.grid_size = 100;
  bad.samples.resize(100);
  CHECK_THROWS_AS(tubegeo::harmonic_extend(bad), std::invalid_argument);

  bad = sampled_map(identity_circle, 32);
  CHECK_THROWS_AS(tubegeo::harmonic_extend(bad), std::invalid_argument);

  bad = good;
  bad.samples.pop_back();
  CHECK_THROWS_AS(tubegeo::harmonic_extend(bad), std::invalid_argument);

  bad = good;
  bad.samples[5][0] = std::nan("");
  CHECK_THROWS_AS(tubegeo::harmonic_extend(bad), std::invalid_argument);
}

TEST_CASE("field constructor rejects malformed mode tables") {
  std::array<std::vector<Complex>, 2> one_mode;
  one_mode[0] = {Complex(1.0)};
  one_mode[1] = {Complex(1.0)};
  CHECK_THROWS_AS(HarmonicField(std::move(one_mode)), std::invalid_argument);

  std::array<std::vector<Complex>, 2> uneven;
  uneven[0] = {Complex(1.0), Complex(0.0)};
  uneven[1] = {Complex(1.0), Complex(0.0), Complex(0.0)};
  CHECK_THROWS_AS(HarmonicField(std::move(uneven)), std::invalid_argument);
}

TEST_CASE("extension of the identity boundary is the identity") {
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(identity_circle, 128));
  std::mt19937 gen(41u);
  for (int i = 0; i < 50; ++i) {
    const double r = oracles::uniform(gen);
    const double phi = oracles::uniform(gen, 0.0, 2.0 * kPi);
    const Vec2 v = u.value(r * std::polar(1.0, phi));
    CHECK(std::abs(v[0] - r * std::cos(phi)) < 1e-12);
    CHECK(std::abs(v[1] - r * std::sin(phi)) < 1e-12);
  }
}

TEST_CASE("extension of constant data is constant") {
  const HarmonicField u =
      tubegeo::harmonic_extend(sampled_map([](double) { return Vec2{0.3, 0.7}; }, 64));
  for (Complex z : {Complex(0.0), Complex(0.5, 0.2), Complex(-0.9, 0.0)}) {
    const Vec2 v = u.value(z);
    CHECK(std::abs(v[0] - 0.3) < 1e-13);
    CHECK(std::abs(v[1] - 0.7) < 1e-13);
  }
  const auto w = tubegeo::wirtinger_at(u, Complex(0.2, 0.1));
  CHECK(std::abs(w.d) < 1e-13);
  CHECK(std::abs(w.dbar) < 1e-13);
  CHECK(std::abs(tubegeo::jacobian_det(u, Complex(0.4, -0.1))) < 1e-13);
}

TEST_CASE("extension value at zero is the sample mean") {
  const BoundaryMap bmap = sampled_map(
      [](double t) {
        return Vec2{0.2 + 0.5 * std::cos(3.0 * t), -0.1 + 0.4 * std::sin(2.0 * t)};
      },
      256);
  const HarmonicField u = tubegeo::harmonic_extend(bmap);
  Vec2 mean{0.0, 0.0};
  for (const Vec2& s : bmap.samples) {
    mean[0] += s[0];
    mean[1] += s[1];
  }
  mean[0] /= bmap.grid_size;
  mean[1] /= bmap.grid_size;
  const Vec2 at0 = u.value(Complex(0.0));
  CHECK(std::abs(at0[0] - mean[0]) < 1e-12);
  CHECK(std::abs(at0[1] - mean[1]) < 1e-12);
}

TEST_CASE("extension reproduces smooth boundary samples") {
  const BoundaryMap bmap = sampled_map(
      [](double t) {
        return Vec2{std::cos(t) + 0.2 * std::cos(5.0 * t), std::sin(2.0 * t)};
      },
      128);
  const HarmonicField u = tubegeo::harmonic_extend(bmap);
  for (int j = 0; j < 128; ++j) {
    const double t = 2.0 * kPi * j / 128.0;
    const Vec2 v = u.value(std::polar(1.0, t));
    CHECK(std::abs(v[0] - bmap.samples[j][0]) < 1e-10);
    CHECK(std::abs(v[1] - bmap.samples[j][1]) < 1e-10);
  }
}

TEST_CASE("extension matches Poisson kernel quadrature on smooth data") {
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(folded_arc, 1024));
  std::mt19937 gen(42u);
  for (int i = 0; i < 10; ++i) {
    const Complex z = std::sqrt(oracles::uniform(gen)) * 0.95 *
                      std::polar(1.0, oracles::uniform(gen, 0.0, 2.0 * kPi));
    const Vec2 got = u.value(z);
    const Vec2 want = poisson_oracle(folded_arc, z);
    CHECK(std::abs(got[0] - want[0]) < 1e-9);
    CHECK(std::abs(got[1] - want[1]) < 1e-9);
  }
}

TEST_CASE("extension is discretely harmonic") {
  // Low-order data keeps the h^2 truncation of the stencil below the bound;
  // the Poisson oracle test covers rough data at much higher precision.
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(
      [](double t) {
        return Vec2{std::cos(t) + 0.1 * std::cos(4.0 * t) + 0.3 * std::sin(2.0 * t),
                    std::sin(t) - 0.1 * std::sin(4.0 * t) + 0.2 * std::cos(3.0 * t)};
      },
      512));
  std::mt19937 gen(43u);
  const double h = 1e-3;
  for (int i = 0; i < 50; ++i) {
    const Complex z = std::sqrt(oracles::uniform(gen)) * 0.9 *
                      std::polar(1.0, oracles::uniform(gen, 0.0, 2.0 * kPi));
    for (int ch = 0; ch < 2; ++ch) {
      const double lap = (u.value(z + h)[ch] + u.value(z - h)[ch] +
                          u.value(z + Complex(0, h))[ch] + u.value(z - Complex(0, h))[ch] -
                          4.0 * u.value(z)[ch]) /
                         (h * h);
      CHECK(std::abs(lap) < 1e-6);
    }
  }
}

TEST_CASE("wirtinger derivatives of the identity") {
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(identity_circle, 128));
  const auto w = tubegeo::wirtinger_at(u, Complex(0.0));
  CHECK(std::abs(w.d) < 1e-13);
  CHECK(std::abs(w.dbar - Complex(1.0)) < 1e-13);
  CHECK(std::abs(tubegeo::jacobian_det(u, Complex(0.3, 0.4)) - 1.0) < 1e-12);
}

TEST_CASE("orientation-reversing circle flips the Jacobian sign") {
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(reversed_circle, 128));
  CHECK(std::abs(tubegeo::jacobian_det(u, Complex(0.0)) + 1.0) < 1e-12);
  const auto w = tubegeo::wirtinger_at(u, Complex(0.0));
  CHECK(std::abs(w.d - Complex(1.0)) < 1e-13);
  CHECK(std::abs(w.dbar) < 1e-13);
}

TEST_CASE("wirtinger derivatives match finite differences") {
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(folded_arc, 512));
  const Complex z(0.2, 0.1);
  const double h = 1e-5;
  const Vec2 xp = u.value(z + h), xm = u.value(z - h);
  const Vec2 yp = u.value(z + Complex(0, h)), ym = u.value(z - Complex(0, h));
  const double u1x = (xp[0] - xm[0]) / (2 * h), u1y = (yp[0] - ym[0]) / (2 * h);
  const double u2x = (xp[1] - xm[1]) / (2 * h), u2y = (yp[1] - ym[1]) / (2 * h);
  const auto w = tubegeo::wirtinger_at(u, z);
  CHECK(std::abs(w.d - 0.5 * Complex(u1x - u2y, u2x + u1y)) < 1e-7);
  CHECK(std::abs(w.dbar - 0.5 * Complex(u1x + u2y, u2x - u1y)) < 1e-7);
  const double det_fd = u1x * u2y - u1y * u2x;
  CHECK(std::abs(tubegeo::jacobian_det(u, z) - det_fd) < 1e-7);
}

TEST_CASE("jacobian equals the Wirtinger modulus difference") {
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(folded_arc, 512));
  std::mt19937 gen(44u);
  for (int i = 0; i < 20; ++i) {
    const Complex z = std::sqrt(oracles::uniform(gen)) * 0.95 *
                      std::polar(1.0, oracles::uniform(gen, 0.0, 2.0 * kPi));
    const auto w = tubegeo::wirtinger_at(u, z);
    const double from_w = std::norm(w.dbar) - std::norm(w.d);
    CHECK(std::abs(tubegeo::jacobian_det(u, z) - from_w) < 1e-10);
  }
}

TEST_CASE("derivative at zero matches the first boundary moment") {
  // u_x(0) - i u_y(0) per channel equals (1/pi) int e^{-it} h(t) dt.
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(folded_arc, 1024));
  const auto g = u.completion_derivative(Complex(0.0));
  const int n = 8192;
  for (int ch = 0; ch < 2; ++ch) {
    Complex moment = 0.0;
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * kPi * j / n;
      moment += std::polar(1.0, -t) * folded_arc(t)[ch];
    }
    moment *= 2.0 / static_cast<double>(n);  // (1/pi) * (2pi/n) * sum / 2
    CHECK(std::abs(g[ch] - moment) < 1e-8);
  }
}

TEST_CASE("value and derivative guards") {
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(identity_circle, 64));
  CHECK_NOTHROW(u.value(Complex(1.0 + 5e-10, 0.0)));
  CHECK_THROWS_AS(u.value(Complex(1.1, 0.0)), std::domain_error);
  CHECK_THROWS_AS(tubegeo::wirtinger_at(u, Complex(1.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(tubegeo::jacobian_det(u, Complex(0.0, 1.0)), std::domain_error);
}

TEST_CASE("count_preimages on a diffeomorphism") {
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(identity_circle, 128));
  CHECK(tubegeo::count_preimages(u, {0.5, 0.0}, 64, 10.0 / 64.0) == 1);
  CHECK(tubegeo::count_preimages(u, {0.0, 0.0}, 64, 10.0 / 64.0) == 1);
  CHECK(tubegeo::count_preimages(u, {1.5, 0.0}, 64, 10.0 / 64.0) == 0);
  CHECK_THROWS_AS(tubegeo::count_preimages(u, {0.0, 0.0}, 32, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(tubegeo::count_preimages(u, {0.0, 0.0}, 64, 0.0), std::invalid_argument);
}

TEST_CASE("count_preimages sees both sheets of the folded extension") {
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(folded_arc, 1024));
  const Vec2 target = u.value(Complex(0.0, 0.4));
  CHECK(tubegeo::count_preimages(u, target, 256, 10.0 / 256.0) == 2);
}

TEST_CASE("preimage counts over a target sweep stay at two sheets") {
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(folded_arc, 1024));
  const tubegeo::FieldGrid grid(u, 128);
  std::mt19937 gen(45u);
  int max_count = 0;
  for (int t = 0; t < 100; ++t) {
    const int i = static_cast<int>(gen() % 120u);
    const int j = static_cast<int>(gen() % 128u);
    const int count = grid.count_preimages(grid.value_at(i, j), 10.0 / 128.0);
    CHECK(count >= 1);
    max_count = std::max(max_count, count);
  }
  CHECK(max_count == 2);
}

TEST_CASE("degeneracy_curve of diffeomorphic extensions is empty") {
  const HarmonicField ident = tubegeo::harmonic_extend(sampled_map(identity_circle, 128));
  CHECK(tubegeo::degeneracy_curve(ident, 128, 1e-3).empty());
  const HarmonicField rev = tubegeo::harmonic_extend(sampled_map(reversed_circle, 128));
  CHECK(tubegeo::degeneracy_curve(rev, 128, 1e-3).empty());
  CHECK_THROWS_AS(tubegeo::degeneracy_curve(ident, 64, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(tubegeo::degeneracy_curve(ident, 128, 0.0), std::invalid_argument);
}

TEST_CASE("degeneracy_curve of the folded extension spans the fold diameter") {
  const HarmonicField u = tubegeo::harmonic_extend(sampled_map(folded_arc, 1024));
  const auto chain = tubegeo::degeneracy_curve(u, 256, 1e-3);
  REQUIRE(chain.size() >= 10);
  // The degenerate set is the real diameter; every chain point hugs it and
  // the per-box minimum drives |det Du| to numerical zero.
  for (const Complex z : chain) {
    CHECK(std::abs(z.imag()) < 0.05);
    CHECK(std::abs(tubegeo::jacobian_det(u, z)) <= 1e-8);
  }
  const double d_front = std::min(std::abs(chain.front() - 1.0), std::abs(chain.front() + 1.0));
  const double d_back = std::min(std::abs(chain.back() - 1.0), std::abs(chain.back() + 1.0));
  CHECK(d_front < 0.05);
  CHECK(d_back < 0.05);
  CHECK(std::abs(chain.front() - chain.back()) > 1.8);
}

TEST_CASE("bivalence_experiment on the folded arc") {
  const BoundaryMap bmap = sampled_map(folded_arc, 1024);
  const auto report = tubegeo::bivalence_experiment(bmap, 128);
  CHECK(report.max_preimage_count == 2);
  CHECK(report.degeneracy_points.size() >= 10);
  REQUIRE(report.endpoint_gaps.size() == 2);
  CHECK(report.endpoint_gaps[0] < 0.05);
  CHECK(report.endpoint_gaps[1] < 0.05);
  CHECK(report.excluded_region_witnesses.size() >= 5);
  CHECK_THROWS_AS(tubegeo::bivalence_experiment(bmap, 64), std::invalid_argument);
}

TEST_CASE("bivalence_experiment on a flatter folded arc") {
  const BoundaryMap bmap = sampled_map(
      [](double t) {
        const double c = std::cos(t);
        const double len = std::sqrt(c * c + 1.0);
        return Vec2{c / len, 1.0 / len};
      },
      1024);
  const auto report = tubegeo::bivalence_experiment(bmap, 128);
  CHECK(report.max_preimage_count == 2);
  CHECK_FALSE(report.degeneracy_points.empty());
  CHECK_FALSE(report.excluded_region_witnesses.empty());
}

TEST_CASE("bivalence_experiment on a diffeomorphism reports one sheet") {
  const auto report = tubegeo::bivalence_experiment(sampled_map(identity_circle, 256), 128);
  CHECK(report.max_preimage_count == 1);
  CHECK(report.degeneracy_points.empty());
  CHECK(report.excluded_region_witnesses.empty());
  CHECK(report.endpoint_gaps.empty());
}

TEST_CASE("random self-maps satisfy the derivative admissibility bound") {
  std::mt19937 gen(46u);
  for (int trial = 0; trial < 30; ++trial) {
    // Zero-mean trigonometric polynomial data, then scaled into the disc.
    std::array<std::array<double, 12>, 2> coef;
    for (auto& ch : coef)
      for (double& c : ch) c = oracles::uniform(gen, -1.0, 1.0);
    auto raw = [&](double t) {
      Vec2 v{0.0, 0.0};
      for (int ch = 0; ch < 2; ++ch)
        for (int k = 1; k <= 6; ++k)
          v[ch] += coef[ch][2 * k - 2] * std::cos(k * t) + coef[ch][2 * k - 1] * std::sin(k * t);
      return v;
    };
    BoundaryMap bmap = sampled_map(raw, 512);
    const HarmonicField pre = tubegeo::harmonic_extend(bmap);
    double sup = 0.0;
    for (int j = 0; j < 8192; ++j) {
      const Vec2 v = pre.value(std::polar(1.0, 2.0 * kPi * j / 8192.0));
      sup = std::max(sup, std::hypot(v[0], v[1]));
    }
    const double scale = 1.0 / (sup * (1.0 + 1e-6));
    for (Vec2& s : bmap.samples) {
      s[0] *= scale;
      s[1] *= scale;
    }
    const HarmonicField u = tubegeo::harmonic_extend(bmap);
    const auto w = tubegeo::wirtinger_at(u, Complex(0.0));
    CHECK(tubegeo::schwarz_admissible(w.d, w.dbar));
    CHECK(std::abs(w.d) + std::abs(w.dbar) <= 4.0 / kPi + 1e-9);
  }
}

TEST_CASE("report serialization is stable and ordered") {
  tubegeo::BivalenceReport report;
  report.max_preimage_count = 2;
  report.degeneracy_points = {Complex(0.5, 0.0), Complex(-0.5, 0.0)};
  report.excluded_region_witnesses = {{0.1, 0.9}};
  report.endpoint_gaps = {0.01, 0.02};
  const std::string text = tubegeo::to_json(report);
  CHECK(text == tubegeo::to_json(report));

  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["max_preimage_count"] == 2);
  CHECK(doc["degeneracy_points"].size() == 2);
  CHECK(doc["degeneracy_points"][0][0] == 0.5);
  CHECK(doc["excluded_region_witnesses"][0][1] == 0.9);
  CHECK(doc["endpoint_gaps"][1] == 0.02);

  const size_t p0 = text.find("max_preimage_count");
  const size_t p1 = text.find("degeneracy_points");
  const size_t p2 = text.find("excluded_region_witnesses");
  const size_t p3 = text.find("endpoint_gaps");
  CHECK(p0 < p1);
  CHECK(p1 < p2);
  CHECK(p2 < p3);
}
