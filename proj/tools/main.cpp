#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tubegeo/basis.hpp"
#include "tubegeo/geodesics.hpp"
#include "tubegeo/harmonic.hpp"
#include "tubegeo/kobayashi.hpp"

namespace {

using namespace tubegeo;

// Shortest round-trip representation; identical flags must yield
// byte-identical output.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text) {
  std::istringstream in(text);
  double v = 0.0;
  char extra = 0;
  if (!(in >> v) || (in >> extra)) {
    throw std::invalid_argument("not a number: " + text);
  }
  return v;
}

std::vector<double> parse_tuple(const std::string& text, size_t count) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(parse_number(item));
  if (out.size() != count) {
    throw std::invalid_argument("expected " + std::to_string(count) +
                                " comma-separated numbers: " + text);
  }
  return out;
}

Vec2 parse_pair(const std::string& text) {
  const auto v = parse_tuple(text, 2);
  return {v[0], v[1]};
}

CVec2 parse_complex_pair(const std::string& text) {
  const auto v = parse_tuple(text, 4);
  return {Complex(v[0], v[1]), Complex(v[2], v[3])};
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

int run_kappa(const std::string& x_text, const std::string& y_text) {
  const TangentVector v{parse_pair(x_text), parse_pair(y_text)};
  const KappaResult k = kappa_ball_origin(v);
  std::cout << "r = " << fmt(k.r) << "\n"
            << "theta = " << fmt(k.theta) << "\n"
            << "alpha = " << fmt(k.alpha) << "\n"
            << "beta = " << fmt(k.beta) << "\n";
  return 0;
}

int run_indicatrix(int n, const std::string& format, const std::string& path) {
  const auto samples = indicatrix_samples(n);
  std::ofstream out = open_output(path);
  if (format == "csv") {
    out << "theta,x,y\n";
    for (const auto& s : samples) {
      out << fmt(s.theta) << ',' << fmt(s.x) << ',' << fmt(s.y) << '\n';
    }
  } else {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& s : samples) doc.push_back({s.theta, s.x, s.y});
    out << doc.dump(2) << '\n';
  }
  if (!out.good()) throw std::runtime_error("write failed: " + path);
  return 0;
}

int run_geodesic(const std::string& a_text, const std::string& b_text,
                 const std::string& basis_text, const std::string& action,
                 const std::string& lambda_text, int grid, const std::string& out_path) {
  const GeodesicParams params{parse_complex_pair(a_text), parse_pair(b_text)};
  const ConvexBasis basis = ConvexBasis::parse(basis_text);

  if (action == "classify") {
    const GeodesicClass cls = classify(params);
    std::cout << "tag = " << to_string(cls.tag) << "\n";
    std::cout << "singular_params =";
    for (size_t i = 0; i < cls.singular_params.size(); ++i) {
      std::cout << (i == 0 ? " " : ",") << fmt(cls.singular_params[i]);
    }
    std::cout << "\n";
    return 0;
  }
  if (action == "trace") {
    if (out_path.empty()) throw std::invalid_argument("trace requires --out");
    const PoissonExtension ext(params, basis, grid);
    std::ofstream out = open_output(out_path);
    out << "t,re_f1,im_f1,re_f2,im_f2\n";
    for (int j = 0; j < 512; ++j) {
      const double t = 2.0 * std::numbers::pi * j / 512;
      const CVec2 f = ext.boundary_value(t);
      out << fmt(t) << ',' << fmt(f[0].real()) << ',' << fmt(f[0].imag()) << ','
          << fmt(f[1].real()) << ',' << fmt(f[1].imag()) << '\n';
    }
    if (!out.good()) throw std::runtime_error("write failed: " + out_path);
    return 0;
  }
  // extend
  if (lambda_text.empty()) throw std::invalid_argument("extend requires --lambda");
  const Vec2 l = parse_pair(lambda_text);
  const CVec2 f = extend_poisson(params, basis, Complex(l[0], l[1]), grid);
  std::cout << "re_f1 = " << fmt(f[0].real()) << "\n"
            << "im_f1 = " << fmt(f[0].imag()) << "\n"
            << "re_f2 = " << fmt(f[1].real()) << "\n"
            << "im_f2 = " << fmt(f[1].imag()) << "\n";
  return 0;
}

int run_schwarz(const std::string& d_text, const std::string& dbar_text) {
  const Vec2 d = parse_pair(d_text);
  const Vec2 db = parse_pair(dbar_text);
  const Complex cd(d[0], d[1]), cdb(db[0], db[1]);
  const auto word = [](bool b) { return b ? "true" : "false"; };
  std::cout << "sufficient = " << word(schwarz_sufficient(cd, cdb)) << "\n"
            << "admissible = " << word(schwarz_admissible(cd, cdb)) << "\n"
            << "necessary = " << word(schwarz_necessary(cd, cdb)) << "\n";
  return 0;
}

int run_bivalence(const std::string& a_text, const std::string& b_text,
                  const std::string& basis_text, int resolution, const std::string& path) {
  const GeodesicParams params{parse_complex_pair(a_text), parse_pair(b_text)};
  const ConvexBasis basis = ConvexBasis::parse(basis_text);
  if (basis.kind() != BasisKind::UnitBall) {
    throw std::invalid_argument("bivalence requires --basis ball");
  }
  const GeodesicClass cls = classify(params);
  if (cls.tag != GeodesicTag::FoldedArc) {
    std::cerr << "warning: parameters classify to " << to_string(cls.tag)
              << ", not FoldedArc; running anyway\n";
  }

  constexpr int kBoundaryGrid = 1024;
  BoundaryMap bmap;
  bmap.grid_size = kBoundaryGrid;
  bmap.samples.reserve(kBoundaryGrid);
  for (int j = 0; j < kBoundaryGrid; ++j) {
    const double t = 2.0 * std::numbers::pi * j / kBoundaryGrid;
    try {
      bmap.samples.push_back(boundary_real_part(params, basis, t));
    } catch (const std::domain_error&) {
      // Singular angle on a node: record the midpoint of the side limits.
      const Vec2 lo = boundary_real_part(params, basis, t - 1e-7);
      const Vec2 hi = boundary_real_part(params, basis, t + 1e-7);
      bmap.samples.push_back(0.5 * (lo + hi));
    }
  }

  const BivalenceReport report = bivalence_experiment(bmap, resolution);
  std::ofstream out = open_output(path);
  out << to_json(report) << '\n';
  if (!out.good()) throw std::runtime_error("write failed: " + path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tube-domain geometry toolbox: invariant metric, geodesics, "
               "harmonic-map experiments"};
  app.require_subcommand(1);

  std::string x_text, y_text;
  auto* kappa = app.add_subcommand("kappa", "Metric at the origin for X+iY");
  kappa->add_option("--X", x_text, "real part, as x1,x2")->required();
  kappa->add_option("--Y", y_text, "imaginary part, as y1,y2")->required();

  int ind_n = 0;
  std::string ind_format = "csv", ind_out;
  auto* indicatrix = app.add_subcommand("indicatrix", "Sample the indicatrix boundary");
  indicatrix->add_option("--n", ind_n, "number of samples (>= 2)")->required();
  indicatrix->add_option("--format", ind_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  indicatrix->add_option("--out", ind_out, "output path")->required();

  std::string geo_a, geo_b, geo_basis = "ball", geo_action, geo_lambda, geo_out;
  int geo_grid = 4096;
  auto* geodesic = app.add_subcommand("geodesic", "Classify, trace or extend a geodesic");
  geodesic->add_option("action", geo_action, "classify, trace or extend")
      ->required()
      ->check(CLI::IsMember({"classify", "trace", "extend"}));
  geodesic->add_option("--a", geo_a, "complex pair, as re1,im1,re2,im2")->required();
  geodesic->add_option("--b", geo_b, "real pair, as b1,b2")->required();
  geodesic->add_option("--basis", geo_basis, "ball or ellipse:p,q");
  geodesic->add_option("--lambda", geo_lambda, "evaluation point, as re,im");
  geodesic->add_option("--grid", geo_grid, "boundary grid size (>= 64)");
  geodesic->add_option("--out", geo_out, "output path for trace");

  std::string sch_d, sch_dbar;
  auto* schwarz = app.add_subcommand("schwarz", "Harmonic Schwarz-lemma predicates");
  schwarz->add_option("--d", sch_d, "first derivative, as re,im")->required();
  schwarz->add_option("--dbar", sch_dbar, "second derivative, as re,im")->required();

  std::string biv_a, biv_b, biv_basis = "ball", biv_out;
  int biv_resolution = 256;
  auto* bivalence = app.add_subcommand("bivalence", "Preimage-count experiment");
  bivalence->add_option("--a", biv_a, "complex pair, as re1,im1,re2,im2")->required();
  bivalence->add_option("--b", biv_b, "real pair, as b1,b2")->required();
  bivalence->add_option("--basis", biv_basis, "must be ball");
  bivalence->add_option("--resolution", biv_resolution, "polar grid resolution (>= 128)");
  bivalence->add_option("--out", biv_out, "output path for the JSON report")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(kappa)) return run_kappa(x_text, y_text);
    if (app.got_subcommand(indicatrix)) return run_indicatrix(ind_n, ind_format, ind_out);
    if (app.got_subcommand(geodesic)) {
      return run_geodesic(geo_a, geo_b, geo_basis, geo_action, geo_lambda, geo_grid, geo_out);
    }
    if (app.got_subcommand(schwarz)) return run_schwarz(sch_d, sch_dbar);
    if (app.got_subcommand(bivalence)) {
      return run_bivalence(biv_a, biv_b, biv_basis, biv_resolution, biv_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
