#include "lagprop/cauchy.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "lagprop/expand.hpp"
#include "lagprop/specfun.hpp"

namespace lagprop {

void validate(const CauchyProblem& p) {
  validate(p.spec);
  if (!(p.T > 0.0) || !std::isfinite(p.T)) throw DomainError("CauchyProblem: T must be positive");
  if (p.initial.dim() < 1 || p.initial.dim() > kMaxDim) throw DomainError("CauchyProblem: dimension must be 1..3");
  if (!p.initial.all_finite()) throw DomainError("CauchyProblem: initial data must be finite");
  for (std::size_t k = 0; k < p.output_times.size(); ++k) {
    const double t = p.output_times[k];
    if (!(t >= 0.0 && t <= p.T)) throw DomainError("CauchyProblem: output times must lie in [0, T]");
    if (k > 0 && t < p.output_times[k - 1]) throw DomainError("CauchyProblem: output times must be sorted");
  }
  for (const auto& s : p.poly_source) {
    (void)p.initial.flat_index(s.n);  // range check
    for (const cplx& c : s.poly)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw DomainError("CauchyProblem: source coefficients must be finite");
  }
}

namespace {

cplx horner(const std::vector<cplx>& poly, double t) {
  cplx s = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) s = s * t + *it;
  return s;
}

}  // namespace

Trajectory solve(const CauchyProblem& p, int quad_order) {
  validate(p);
  const std::size_t modes = p.initial.size();
  std::vector<cplx> lambda(modes);
  for (std::size_t i = 0; i < modes; ++i) lambda[i] = symbol(p.spec, p.initial.total_degree(i));

  std::map<std::size_t, const std::vector<cplx>*> poly;
  for (const auto& s : p.poly_source) poly[p.initial.flat_index(s.n)] = &s.poly;
  const bool has_source = !poly.empty() || static_cast<bool>(p.source);
  const QuadratureRule unit = gauss_rule(QuadratureKind::legendre, quad_order, 0.0, 1.0);

  Trajectory tr;
  tr.times = p.output_times;
  for (double t : p.output_times) {
    CoefficientField state = p.initial;
    std::vector<bool> mask(modes, false);
    const int panels = std::max(1, static_cast<int>(std::ceil(t - 1e-12)));
    const double h = t / panels;
    for (std::size_t i = 0; i < modes; ++i) {
      const cplx lam = lambda[i];
      if (t * lam.imag() > kOverflowExponent) {
        mask[i] = true;
        tr.any_overflow = true;
        state[i] = 0.0;
        continue;
      }
      cplx a = std::exp(cplx(0.0, -t) * lam) * p.initial[i];
      if (has_source && t > 0.0) {
        const auto pit = poly.find(i);
        cplx integral = 0.0;
        for (int k = 0; k < panels; ++k)
          for (int q = 0; q < quad_order; ++q) {
            const double s = (k + unit.nodes[q]) * h;
            cplx F = 0.0;
            if (pit != poly.end()) F += horner(*pit->second, s);
            if (p.source) F += p.source(i, s);
            integral += unit.weights[q] * std::exp(cplx(0.0, -(t - s)) * lam) * F;
          }
        a -= cplx(0.0, h) * integral;
      }
      state[i] = a;
    }
    tr.states.push_back(std::move(state));
    tr.overflow_mask.push_back(std::move(mask));
  }
  return tr;
}

SourceFn sampled_source(std::function<cplx(std::span<const double>, double)> F, std::vector<int> shape,
                        int quad_order) {
  struct Cache {
    std::function<cplx(std::span<const double>, double)> F;
    std::vector<int> shape;
    int q;
    std::mutex m;
    std::map<double, std::shared_ptr<const CoefficientField>> fields;
  };
  auto cache = std::make_shared<Cache>();
  cache->F = std::move(F);
  cache->shape = std::move(shape);
  cache->q = quad_order;
  return [cache](std::size_t flat, double t) -> cplx {
    std::shared_ptr<const CoefficientField> field;
    {
      std::lock_guard<std::mutex> lock(cache->m);
      auto it = cache->fields.find(t);
      if (it != cache->fields.end()) field = it->second;
    }
    if (!field) {
      auto f = [&](std::span<const double> x) { return cache->F(x, t); };
      field = std::make_shared<const CoefficientField>(laguerre_analyze(f, cache->shape, cache->q));
      std::lock_guard<std::mutex> lock(cache->m);
      cache->fields.emplace(t, field);
    }
    return (*field)[flat];
  };
}

std::string to_string(Posedness p) {
  switch (p) {
    case Posedness::well_posed: return "well_posed";
    case Posedness::ill_posed: return "ill_posed";
    case Posedness::boundary: return "boundary";
  }
  return "";
}

WellposednessReport wellposedness_report(const CauchyProblem& p, double alpha, SpaceKind kind) {
  validate(p);
  WellposednessReport rep;
  const cplx rr = p.spec.r == 1.0 ? p.spec.rho : std::pow(p.spec.rho, p.spec.r);
  // -i T rr, written out so a real rr gives an exactly imaginary z
  rep.z_eff = cplx(p.T * rr.imag(), -p.T * rr.real());
  rep.propagator = classify_propagator(rep.z_eff, p.spec.r, p.spec.c, alpha, kind);
  if (rep.propagator.boundary)
    rep.verdict = Posedness::boundary;
  else if (rep.propagator.verdict == Verdict::discontinuous)
    rep.verdict = Posedness::ill_posed;
  else
    rep.verdict = Posedness::well_posed;

  for (std::size_t i = 0; i < p.initial.size(); ++i)
    rep.im_lambda.push_back(symbol(p.spec, p.initial.total_degree(i)).imag());

  CauchyProblem q = p;
  if (q.output_times.empty()) q.output_times = {0.0, p.T};
  const Trajectory tr = solve(q);
  rep.times = tr.times;
  for (const auto& s : tr.states) {
    try {
      rep.h.push_back(fit_growth(s, alpha).h);
      rep.fit_ok.push_back(true);
    } catch (const DegenerateFitError&) {
      rep.h.push_back(NAN);
      rep.fit_ok.push_back(false);
    }
  }
  return rep;
}

HermiteProblem to_harmonic_oscillator(const CauchyProblem& p) {
  validate(p);
  if (p.dim() != 1) throw DomainError("to_harmonic_oscillator: the problem must be one-dimensional");
  if (p.spec.r != 1.0) throw DomainError("to_harmonic_oscillator: only r = 1 is supported");
  if (!p.poly_source.empty() || p.source) throw DomainError("to_harmonic_oscillator: the problem must be homogeneous");
  HermiteProblem hp;
  hp.rho_h = p.spec.rho / 4.0;
  hp.c_h = p.spec.c - p.spec.rho / 2.0;
  hp.T = p.T;
  hp.initial = bridge_laguerre_to_hermite(p.initial);
  hp.output_times = p.output_times;
  return hp;
}

cplx hermite_symbol(const HermiteProblem& hp, int total_degree) {
  return hp.rho_h * (2.0 * total_degree + 2.0) + hp.c_h;
}

Trajectory solve_hermite(const HermiteProblem& hp) {
  Trajectory tr;
  tr.times = hp.output_times;
  const std::size_t modes = hp.initial.size();
  for (double t : hp.output_times) {
    CoefficientField state = hp.initial;
    std::vector<bool> mask(modes, false);
    for (std::size_t i = 0; i < modes; ++i) {
      const cplx lam = hermite_symbol(hp, hp.initial.total_degree(i));
      if (t * lam.imag() > kOverflowExponent) {
        mask[i] = true;
        tr.any_overflow = true;
        state[i] = 0.0;
      } else {
        state[i] = std::exp(cplx(0.0, -t) * lam) * hp.initial[i];
      }
    }
    tr.states.push_back(std::move(state));
    tr.overflow_mask.push_back(std::move(mask));
  }
  return tr;
}

Trajectory unbridge(const Trajectory& hermite, double tol) {
  Trajectory tr;
  tr.times = hermite.times;
  tr.any_overflow = hermite.any_overflow;
  for (std::size_t k = 0; k < hermite.states.size(); ++k) {
    const auto& hs = hermite.states[k];
    tr.states.push_back(bridge_hermite_to_laguerre(hs, tol));
    const int N = tr.states.back().shape()[0];
    std::vector<bool> mask(N, false);
    for (int n = 0; n < N; ++n) mask[n] = hermite.overflow_mask[k][hs.flat_index(std::vector<int>{0, 2 * n})];
    tr.overflow_mask.push_back(std::move(mask));
  }
  return tr;
}

}  // namespace lagprop
