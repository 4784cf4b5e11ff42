#include "lagprop/transforms.hpp"

#include <cmath>

#include "lagprop/expand.hpp"
#include "lagprop/radial.hpp"

namespace lagprop {

namespace {

bool multiple_of_two_pi(double t) { return std::abs(std::remainder(t, 2 * kPi)) <= 1e-12; }

}  // namespace

CoefficientField hankel_clifford_frac(const FracOrder& order, const CoefficientField& a) {
  if (order.dim() != a.dim()) throw DomainError("hankel_clifford_frac: order and field dimensions differ");
  CoefficientField out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto n = a.multi_index(i);
    double phase = 0.0;
    for (int j = 0; j < a.dim(); ++j) phase += order.t[j] * n[j];
    out[i] = std::polar(1.0, phase) * a[i];
  }
  return out;
}

KernelApplyResult hankel_clifford_kernel(const FracOrder& order, const SampledFunction& f,
                                         const std::vector<Point>& points, int quad_order) {
  std::vector<cplx> w;
  for (double t : order.t) {
    if (multiple_of_two_pi(t))
      throw DomainError("hankel_clifford_kernel: every phase must be nonzero modulo 2 pi");
    w.push_back(std::polar(1.0, t));
  }
  return kernel_apply(KernelParams(std::move(w)), f, points, quad_order);
}

SampledFunction frac_hankel(double t, const SampledFunction& g, int shape, int quad_order) {
  const SampledFunction f = sqrt_substitution(g);
  auto a = laguerre_analyze(f, {shape}, quad_order);
  a = hankel_clifford_frac(FracOrder{{t}}, a);
  return [a](std::span<const double> x) -> cplx {
    const double s = x[0] * x[0];
    return laguerre_synthesize(a, std::span<const double>(&s, 1));
  };
}

CoefficientField frac_fourier(double rho, const CoefficientField& b) {
  if (b.basis() != Basis::hermite) throw DomainError("frac_fourier: expects a Hermite field");
  CoefficientField out = b;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = std::polar(1.0, -kPi * rho * b.total_degree(i) / 2) * b[i];
  return out;
}

Frac1Report verify_frac1(const SampledFunction& g, double t, int shape, int quad_order, int kernel_order) {
  const auto xs = probe_radii();
  std::vector<Point> sq;
  for (double x : xs) sq.push_back({x * x});

  const SampledFunction hg = frac_hankel(t, g, shape, quad_order);
  const SampledFunction f = sqrt_substitution(g);
  const auto a = laguerre_analyze(f, {shape}, quad_order);
  const auto prop = apply_exp(PropagatorSpec{1.0, 0.0, 1.0, cplx(0.0, t)}, a).field;
  const auto mult = laguerre_synthesize(prop, sq);

  Frac1Report rep;
  std::vector<cplx> leg1(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    leg1[i] = hg(std::span<const double>(&xs[i], 1));
    rep.hankel_vs_multiplier = std::max(rep.hankel_vs_multiplier, std::abs(leg1[i] - mult[i]));
  }
  rep.max_abs_error = rep.hankel_vs_multiplier;
  if (multiple_of_two_pi(t)) {
    rep.kernel_skipped = true;
    rep.multiplier_vs_kernel = NAN;
    rep.hankel_vs_kernel = NAN;
    return rep;
  }
  const auto ker = kernel_apply(KernelParams(std::polar(1.0, t), 1), f, sq, kernel_order);
  rep.kernel_oscillatory = ker.oscillatory;
  rep.kernel_converged = ker.converged;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rep.multiplier_vs_kernel = std::max(rep.multiplier_vs_kernel, std::abs(mult[i] - ker.values[i]));
    rep.hankel_vs_kernel = std::max(rep.hankel_vs_kernel, std::abs(leg1[i] - ker.values[i]));
  }
  rep.max_abs_error = std::max({rep.hankel_vs_multiplier, rep.multiplier_vs_kernel, rep.hankel_vs_kernel});
  return rep;
}

std::vector<Point> frac3_probe_points() {
  const auto s = probe_radii();
  std::vector<Point> pts;
  for (std::size_t i = 0; i < s.size(); ++i) pts.push_back({s[i], s[s.size() - 1 - i]});
  return pts;
}

Frac3Report verify_frac3(const SampledFunction& g_radial, double rho, int shape, int quad_order) {
  if (shape < 1) throw DomainError("verify_frac3: shape must be positive");
  Frac3Report rep;
  rep.radiality_defect = radiality_defect(g_radial);
  if (!(rep.radiality_defect <= kRadialTol))
    throw NotRadialError("verify_frac3: input is not radial", -1, -1, rep.radiality_defect);

  // profile on the half-line through x = r^2
  const SampledFunction f = [g_radial](std::span<const double> x) -> cplx {
    const double p[2] = {std::sqrt(x[0]), 0.0};
    return g_radial(p);
  };
  auto a = laguerre_analyze(f, {shape}, quad_order);
  a = hankel_clifford_frac(FracOrder{{-rho * kPi}}, a);

  // Hermite side, truncated to the blocks the Laguerre modes reach
  const int M = 2 * shape - 1;
  auto b = hermite_analyze(g_radial, {M, M});
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.total_degree(i) > 2 * (shape - 1)) b[i] = 0.0;
  b = frac_fourier(rho, b);

  const cplx literal = std::polar(1.0, kPi * (2 * rho - 0.5) / 4);
  const auto pts = frac3_probe_points();
  const auto lhs = hermite_synthesize(b, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double s = pts[i][0] * pts[i][0] + pts[i][1] * pts[i][1];
    const cplx rhs = laguerre_synthesize(a, std::span<const double>(&s, 1));
    rep.literal_error = std::max(rep.literal_error, std::abs(lhs[i] - literal * rhs));
    rep.corrected_error = std::max(rep.corrected_error, std::abs(lhs[i] - rhs));
  }
  return rep;
}

}  // namespace lagprop
