#include <cmath>
#include <random>

#include "cli.hpp"
#include "lagprop/expand.hpp"
#include "lagprop/propagate.hpp"
#include "lagprop/radial.hpp"
#include "lagprop/specfun.hpp"
#include "lagprop/transforms.hpp"

namespace lagprop::cli {

namespace {

using Kind = Check::Kind;

Check make(const std::string& suite, std::string name, Kind kind, double value, double bound) {
  return Check{suite, std::move(name), kind, value, bound, false};
}

std::vector<Point> probe_points_1d() {
  std::vector<Point> pts;
  for (double x : probe_radii()) pts.push_back({x});
  return pts;
}

CoefficientField random_field(std::vector<int> shape, Basis basis, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CoefficientField a(std::move(shape), basis);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = cplx(nd(rng), nd(rng));
  return a;
}

std::vector<Check> hille_hardy() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> ux(0.1, 20.0), ua(0.0, 2 * kPi), ur(0.0, 0.9);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const cplx w = std::polar(ur(rng), ua(rng));
    const double x = ux(rng), y = ux(rng);
    worst = std::max(worst, hille_hardy_check(w, x, y, 300).abs_err);
  }
  return {make("hille_hardy", "series_N300_vs_closed_form", Kind::max_error, worst, 1e-9)};
}

std::vector<Check> orthonormality() {
  const int n_max = 40;
  double lag = 0.0, her = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    auto ln = [n](std::span<const double> x) -> cplx { return laguerre_l(n, x[0])[n]; };
    auto hn = [n](std::span<const double> x) -> cplx { return hermite_h(n, x[0])[n]; };
    const auto a = laguerre_analyze(ln, {n_max + 1});
    const auto b = hermite_analyze(hn, {n_max + 1});
    for (int m = 0; m <= n_max; ++m) {
      const double delta = m == n ? 1.0 : 0.0;
      lag = std::max(lag, std::abs(a[m] - delta));
      her = std::max(her, std::abs(b[m] - delta));
    }
  }
  return {make("orthonormality", "laguerre_n_le_40", Kind::max_error, lag, 1e-10),
          make("orthonormality", "hermite_n_le_40", Kind::max_error, her, 1e-10)};
}

std::vector<SampledFunction> smooth_test_functions() {
  return {
      [](std::span<const double> x) -> cplx { return std::exp(-x[0] / 2) * (1 + x[0]); },
      [](std::span<const double> x) -> cplx { return std::exp(-x[0] / 2) * (1 - x[0] / 3 + x[0] * x[0] / 20); },
      [](std::span<const double> x) -> cplx { return std::exp(-x[0]); },
      [](std::span<const double> x) -> cplx { return x[0] * std::exp(-0.8 * x[0]); },
      [](std::span<const double> x) -> cplx { return std::exp(-0.75 * x[0]) * (1 + std::sin(x[0])); },
  };
}

std::vector<Check> kernel_vs_multiplier() {
  const auto pts = probe_points_1d();
  const auto fs = smooth_test_functions();
  std::vector<Check> out;
  const std::vector<std::pair<std::string, cplx>> ws = {
      {"w=0.5", 0.5}, {"w=0.3+0.4i", cplx(0.3, 0.4)}, {"w=e^i", std::polar(1.0, 1.0)}};
  for (const auto& [label, w] : ws) {
    const KernelParams kp(w, 1);
    double worst = 0.0;
    for (const auto& f : fs) {
      auto a = laguerre_analyze(f, {64});
      for (int n = 0; n < 64; ++n) a[n] *= std::pow(w, n);
      const auto diag = laguerre_synthesize(a, pts);
      const auto ker = kernel_apply(kp, f, pts);
      for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, std::abs(diag[i] - ker.values[i]));
    }
    out.push_back(make("kernel_vs_multiplier", label, Kind::max_error, worst, kp.unimodular() ? 1e-4 : 1e-6));
  }
  return out;
}

std::vector<Check> bridge() {
  const auto a = random_field({12}, Basis::laguerre, 1005);
  const auto b = bridge_laguerre_to_hermite(a);
  std::vector<Point> grid;
  std::vector<Point> sq;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double x1 = -2.5 + 5.0 * i / 9, x2 = -2.5 + 5.0 * j / 9;
      grid.push_back({x1, x2});
      sq.push_back({x1 * x1 + x2 * x2});
    }
  const auto lhs = hermite_synthesize(b, grid);
  const auto rhs = laguerre_synthesize(a, sq);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));

  const auto back = bridge_hermite_to_laguerre(b);
  double trip = 0.0;
  for (int n = 0; n < 12; ++n) trip = std::max(trip, std::abs(back[n] - a[n]));

  int outside = 0;
  for (int n = 0; n <= 60; ++n)
    for (int k = 0; k <= n; ++k) {
      const double c = c_coeff(n, k);
      if (!(c >= 0.0 && c <= std::sqrt(kPi))) ++outside;
    }
  return {make("bridge", "hermite_vs_laguerre_10x10", Kind::max_error, worst, 1e-8),
          make("bridge", "round_trip", Kind::max_error, trip, 1e-12),
          make("bridge", "c_nk_in_0_sqrt_pi_n_le_60", Kind::mismatches, outside, 0.0)};
}

SampledFunction radial_profile(const CoefficientField& a) {
  return [a](std::span<const double> x) -> cplx {
    const double s = x[0] * x[0] + x[1] * x[1];
    return laguerre_synthesize(a, std::span<const double>(&s, 1));
  };
}

std::vector<Check> frac_identities() {
  std::vector<Check> out;
  const SampledFunction g = [](std::span<const double> r) -> cplx {
    const double s = r[0] * r[0];
    return std::exp(-s / 2) * (1 + 0.3 * s);
  };
  for (const auto& [label, t] : std::vector<std::pair<std::string, double>>{{"1", 1.0}, {"pi", kPi}, {"2pi", 2 * kPi}}) {
    const auto rep = verify_frac1(g, t, 8);
    out.push_back(make("frac_identities", "frac1_t=" + label, Kind::max_error, rep.max_abs_error,
                       rep.kernel_skipped ? 1e-10 : 1e-4));
  }

  double literal = 0.0, corrected = 0.0;
  for (double rho : {0.5, 1.0, 1.5}) {
    const auto a = random_field({6}, Basis::laguerre, 1006);
    const auto rep = verify_frac3(radial_profile(a), rho, 6);
    literal = std::max(literal, rep.literal_error);
    corrected = std::max(corrected, rep.corrected_error);
  }
  out.push_back(make("frac_identities", "frac3_literal_prefactor", Kind::max_error, literal, 1e-6));
  out.push_back(make("frac_identities", "frac3_unit_prefactor", Kind::max_error, corrected, 1e-6));

  // F_1 h_n against (2 pi)^{-1/2} int h_n(x) e^{-i x xi} dx by the trapezoid rule
  double fourier = 0.0;
  const double L = 12.0;
  const int panels = 2400;
  for (int n = 0; n <= 6; ++n) {
    auto hn = [n](std::span<const double> x) -> cplx { return hermite_h(n, x[0])[n]; };
    const auto b = frac_fourier(1.0, hermite_analyze(hn, {7}));
    for (int j = 0; j <= 16; ++j) {
      const double xi = -4.0 + 0.5 * j;
      cplx direct = 0.0;
      for (int k = 0; k <= panels; ++k) {
        const double x = -L + 2 * L * k / panels;
        const double wgt = (k == 0 || k == panels) ? 0.5 : 1.0;
        direct += wgt * hermite_h(n, x)[n] * std::polar(1.0, -x * xi);
      }
      direct *= (2 * L / panels) / std::sqrt(2 * kPi);
      fourier = std::max(fourier, std::abs(hermite_synthesize(b, std::span<const double>(&xi, 1)) - direct));
    }
  }
  out.push_back(make("frac_identities", "fourier_h_n_vs_quadrature", Kind::max_error, fourier, 1e-8));

  const auto b = random_field({9, 9}, Basis::hermite, 1007);
  auto r = b;
  for (int i = 0; i < 4; ++i) r = frac_fourier(1.0, r);
  double period = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) period = std::max(period, std::abs(r[i] - b[i]));
  out.push_back(make("frac_identities", "fourier_period_4", Kind::max_error, period, 1e-10));
  return out;
}

std::vector<Check> posedness() {
  // expected verdicts for r = 1 (threshold alpha = 1), rows: Re z < 0, = 0, > 0
  using V = Verdict;
  const cplx zs[3] = {-0.5, cplx(0.0, 0.5), 0.5};
  const double alphas[3] = {0.5, 1.0, 2.0};
  const V expect[3][3][2] = {
      {{V::isomorphism, V::isomorphism},
       {V::injection_not_surjection, V::isomorphism},
       {V::injection_not_surjection, V::injection_not_surjection}},
      {{V::isomorphism, V::isomorphism}, {V::isomorphism, V::isomorphism}, {V::isomorphism, V::isomorphism}},
      {{V::isomorphism, V::isomorphism},
       {V::discontinuous, V::isomorphism},
       {V::discontinuous, V::discontinuous}},
  };
  int wrong = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 2; ++k) {
        const auto kind = k == 0 ? SpaceKind::roumieu : SpaceKind::beurling;
        if (classify_propagator(zs[i], 1.0, 0.0, alphas[j], kind).verdict != expect[i][j][k]) ++wrong;
      }
  const double grow = demonstrate_illposedness(0.1, 2.0, 400).ratio;
  const double tame = demonstrate_illposedness(0.1, 0.5, 400).ratio;
  return {make("posedness", "verdict_table", Kind::mismatches, wrong, 0.0),
          make("posedness", "illposed_ratio_alpha=2", Kind::min_ratio, grow, 1e6),
          make("posedness", "tame_ratio_alpha=0.5", Kind::max_ratio, tame, 2.0)};
}

void evaluate(Check& c, double tol) {
  if (tol > 0.0 && c.kind == Kind::max_error) c.bound = tol;
  switch (c.kind) {
    case Kind::max_error:
    case Kind::mismatches: c.pass = c.value <= c.bound; break;
    case Kind::min_ratio: c.pass = c.value > c.bound; break;
    case Kind::max_ratio: c.pass = c.value < c.bound; break;
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"hille_hardy", "orthonormality", "kernel_vs_multiplier",
                                                 "bridge",      "frac_identities", "posedness"};
  return names;
}

std::vector<Check> run_suite(const std::string& suite, double tol) {
  std::vector<Check> out;
  auto add = [&](std::vector<Check> more) { out.insert(out.end(), more.begin(), more.end()); };
  if (suite == "all") {
    for (const auto& s : suite_names()) add(run_suite(s, tol));
    return out;
  }
  if (suite == "hille_hardy") add(hille_hardy());
  else if (suite == "orthonormality") add(orthonormality());
  else if (suite == "kernel_vs_multiplier") add(kernel_vs_multiplier());
  else if (suite == "bridge") add(bridge());
  else if (suite == "frac_identities") add(frac_identities());
  else if (suite == "posedness") add(posedness());
  else throw ConfigError("unknown suite '" + suite + "'");
  for (auto& c : out) evaluate(c, tol);
  return out;
}

}  // namespace lagprop::cli
