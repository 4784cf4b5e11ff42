#include "lagprop/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "lagprop/expand.hpp"
#include "lagprop/specfun.hpp"
#include "parallel.hpp"

namespace lagprop {

void validate(const PropagatorSpec& spec) {
  if (spec.rho == cplx(0.0, 0.0)) throw DomainError("PropagatorSpec: rho must be nonzero");
  if (!std::isfinite(spec.r)) throw DomainError("PropagatorSpec: r must be finite");
  if (spec.r < 0.0) {
    const cplx q = -spec.c / spec.rho;
    const double tol = 1e-12 * std::max(1.0, std::abs(q));
    if (std::abs(q.imag()) <= tol && q.real() > -0.5 && std::abs(q.real() - std::round(q.real())) <= tol)
      throw SingularSymbolError("PropagatorSpec: r < 0 and -c/rho is a nonnegative integer");
  }
}

cplx symbol(const PropagatorSpec& spec, int degree) {
  const cplx base = spec.rho * static_cast<double>(degree) + spec.c;
  if (spec.r == 1.0) return base;
  if (base == cplx(0.0, 0.0)) {
    if (spec.r > 0.0) return 0.0;
    if (spec.r == 0.0) return 1.0;
    throw SingularSymbolError("symbol: zero eigenvalue raised to a negative power");
  }
  return std::pow(base, spec.r);
}

CoefficientField apply_power(const PropagatorSpec& spec, const CoefficientField& a) {
  validate(spec);
  CoefficientField out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = symbol(spec, a.total_degree(i)) * a[i];
  return out;
}

ExpResult apply_exp(const PropagatorSpec& spec, const CoefficientField& a) {
  validate(spec);
  ExpResult res{a, std::vector<bool>(a.size(), false), false};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const cplx e = spec.z * symbol(spec, a.total_degree(i));
    if (e.real() > kOverflowExponent) {
      res.overflow[i] = true;
      res.any_overflow = true;
      res.field[i] = 0.0;
    } else {
      res.field[i] = std::exp(e) * a[i];
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// kernel

KernelParams::KernelParams(std::vector<cplx> w_per_axis) : w(std::move(w_per_axis)) {
  if (w.empty() || static_cast<int>(w.size()) > kMaxDim) throw DomainError("KernelParams: dimension must be 1..3");
  for (const cplx& v : w) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("KernelParams: w must be finite");
    if (std::abs(v) > 1.0 + 1e-12) throw DomainError("KernelParams: |w| must not exceed 1");
    if (std::abs(1.0 - v) <= 1e-12) throw DomainError("KernelParams: w = 1 has no kernel representation");
  }
}

KernelParams::KernelParams(cplx w_all, int dim) : KernelParams(std::vector<cplx>(std::max(dim, 0), w_all)) {}

KernelParams KernelParams::from_z(cplx z, int dim) { return KernelParams(std::exp(z), dim); }

bool KernelParams::unimodular() const {
  return std::any_of(w.begin(), w.end(), [](cplx v) { return std::abs(v) > 1.0 - 1e-12; });
}

cplx kernel_eval_1d(cplx w, double x, double y) {
  const cplx one_m = 1.0 - w;
  const cplx q = (1.0 + w) / one_m;
  const cplx arg = 2.0 * std::sqrt(x * y) * std::sqrt(w) / one_m;
  const cplx expo = -0.5 * q * (x + y) + std::abs(arg.real());
  return std::exp(expo) * bessel_i0_scaled(arg) / one_m;
}

cplx kernel_eval(const KernelParams& kp, std::span<const double> x, std::span<const double> y) {
  if (static_cast<int>(x.size()) != kp.dim() || static_cast<int>(y.size()) != kp.dim())
    throw DomainError("kernel_eval: point dimension does not match the kernel");
  cplx k = 1.0;
  for (int j = 0; j < kp.dim(); ++j) {
    if (!(x[j] >= 0.0) || !(y[j] >= 0.0)) throw DomainError("kernel_eval: points must lie in the closed orthant");
    k *= kernel_eval_1d(kp.w[j], x[j], y[j]);
  }
  return k;
}

namespace {

// f sampled on the tensor grid y = 2u, premultiplied by the lifted weights
struct KernelGrid {
  std::vector<double> nodes;
  std::vector<cplx> weighted;  // row-major over node multi-index
  int q = 0;
  int d = 0;
};

KernelGrid sample_grid(const SampledFunction& f, int d, int q) {
  if (q < 1 || 2 * q > 512) throw DomainError("kernel_apply: quad_order must be in 1..256");
  const QuadratureRule rule = gauss_rule(QuadratureKind::laguerre, q);
  KernelGrid g;
  g.q = q;
  g.d = d;
  g.nodes.resize(q);
  std::vector<double> W(q);
  for (int i = 0; i < q; ++i) {
    g.nodes[i] = 2.0 * rule.nodes[i];
    W[i] = 2.0 * rule.lifted_weights[i];
  }
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= q;
  g.weighted.resize(total);
  std::vector<double> y(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double wprod = 1.0;
    for (int j = d - 1; j >= 0; --j) {
      const int i = static_cast<int>(rem % q);
      y[j] = g.nodes[i];
      wprod *= W[i];
      rem /= q;
    }
    const cplx v = f(y);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NonFiniteSampleError("kernel_apply: non-finite sample of f");
    g.weighted[flat] = wprod * v;
  }
  return g;
}

cplx apply_at(const KernelParams& kp, const KernelGrid& g, std::span<const double> x) {
  if (static_cast<int>(x.size()) != g.d) throw DomainError("kernel_apply: point dimension does not match the kernel");
  std::vector<std::vector<cplx>> K(g.d, std::vector<cplx>(g.q));
  for (int j = 0; j < g.d; ++j) {
    if (!(x[j] >= 0.0)) throw DomainError("kernel_apply: points must lie in the closed orthant");
    for (int i = 0; i < g.q; ++i) K[j][i] = kernel_eval_1d(kp.w[j], x[j], g.nodes[i]);
  }
  // contract the last axis first, fixed order
  std::vector<cplx> cur = g.weighted;
  std::size_t len = cur.size();
  for (int j = g.d - 1; j >= 0; --j) {
    const std::size_t outer = len / g.q;
    std::vector<cplx> next(outer);
    for (std::size_t o = 0; o < outer; ++o) {
      cplx s = 0.0;
      for (int i = 0; i < g.q; ++i) s += cur[o * g.q + i] * K[j][i];
      next[o] = s;
    }
    cur.swap(next);
    len = outer;
  }
  return cur[0];
}

std::vector<cplx> apply_points(const KernelParams& kp, const KernelGrid& g, const std::vector<Point>& points) {
  std::vector<cplx> out(points.size());
  detail::parallel_for(points.size(), [&](std::size_t i) { out[i] = apply_at(kp, g, points[i]); });
  return out;
}

}  // namespace

KernelApplyResult kernel_apply(const KernelParams& kp, const SampledFunction& f, const std::vector<Point>& points,
                               int quad_order) {
  const auto lo = apply_points(kp, sample_grid(f, kp.dim(), quad_order), points);
  KernelApplyResult res;
  res.values = apply_points(kp, sample_grid(f, kp.dim(), 2 * quad_order), points);
  res.oscillatory = kp.unimodular();
  double top = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    top = std::max(top, std::abs(res.values[i]));
    diff = std::max(diff, std::abs(res.values[i] - lo[i]));
  }
  res.max_rel_change = top > 0.0 ? diff / top : diff;
  res.converged = res.max_rel_change <= kKernelConvergenceTol;
  return res;
}

SampledFunction kernel_operator(const KernelParams& kp, SampledFunction f, int quad_order) {
  struct State {
    KernelParams kp;
    SampledFunction f;
    int q;
    std::once_flag once;
    KernelGrid grid;
  };
  auto st = std::make_shared<State>();
  st->kp = kp;
  st->f = std::move(f);
  st->q = quad_order;
  return [st](std::span<const double> x) -> cplx {
    std::call_once(st->once, [&] { st->grid = sample_grid(st->f, st->kp.dim(), st->q); });
    return apply_at(st->kp, st->grid, x);
  };
}

HilleHardyCheck hille_hardy_check(cplx w, double x, double y, int N) {
  if (!(std::abs(w) <= 0.999)) throw DomainError("hille_hardy_check: |w| must be at most 0.999");
  if (N < 0) throw DomainError("hille_hardy_check: N must be nonnegative");
  if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("hille_hardy_check: x and y must be nonnegative");
  const auto lx = laguerre_l(N, x);
  const auto ly = laguerre_l(N, y);
  HilleHardyCheck res;
  cplx wn = 1.0;
  for (int n = 0; n <= N; ++n) {
    res.series += wn * (lx[n] * ly[n]);
    wn *= w;
  }
  res.closed = kernel_eval_1d(w, x, y);
  res.abs_err = std::abs(res.series - res.closed);
  return res;
}

// ---------------------------------------------------------------------------
// verdicts

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::isomorphism: return "isomorphism";
    case Verdict::injection_not_surjection: return "injection_not_surjection";
    case Verdict::discontinuous: return "discontinuous";
  }
  return "";
}

std::string to_string(SpaceKind k) { return k == SpaceKind::roumieu ? "roumieu" : "beurling"; }

PropagatorVerdict classify_propagator(cplx z, double r, cplx /*c*/, double alpha, SpaceKind kind) {
  if (z == cplx(0.0, 0.0)) throw DomainError("classify_propagator: z must be nonzero");
  if (!(alpha > 0.0)) throw DomainError("classify_propagator: alpha must be positive");
  if (!(r > 0.0)) throw DomainError("classify_propagator: r must be positive");
  PropagatorVerdict v;
  if (z.real() == 0.0) return v;
  const double threshold = 1.0 / r;
  v.boundary = std::abs(alpha - threshold) <= 1e-12 * threshold;
  const bool below = kind == SpaceKind::roumieu ? (alpha < threshold && !v.boundary)
                                                : (alpha < threshold || v.boundary);
  if (below) return v;
  v.verdict = z.real() < 0.0 ? Verdict::injection_not_surjection : Verdict::discontinuous;
  return v;
}

IllposednessReport demonstrate_illposedness(cplx z, double alpha, int N, double h) {
  if (N < 100) throw DomainError("demonstrate_illposedness: N must be at least 100");
  if (!(alpha > 0.0)) throw DomainError("demonstrate_illposedness: alpha must be positive");
  IllposednessReport rep;
  rep.M = {N / 4, N / 2, N};
  const double inv = 1.0 / alpha;
  double running = -INFINITY;
  int slot = 0;
  for (int n = 0; n <= N; ++n) {
    const double lt = z.real() * n - std::pow(1.0 + n, inv) - h * std::pow(static_cast<double>(n), inv);
    running = std::max(running, lt);
    while (slot < 3 && rep.M[slot] == n) {
      rep.log_S[slot] = running;
      rep.S[slot] = std::exp(running);
      ++slot;
    }
  }
  rep.ratio = std::exp(rep.log_S[2] - rep.log_S[0]);
  rep.strictly_increasing = rep.log_S[0] < rep.log_S[1] && rep.log_S[1] < rep.log_S[2];
  return rep;
}

}  // namespace lagprop
