#pragma once

// The Cauchy problem i u_t - E^r_{rho,c} u = F in coefficient space, solved
// mode by mode with the variation-of-constants formula, plus posedness reports
// and the harmonic-oscillator form of the radial problem.

#include <functional>
#include <vector>

#include "lagprop/coeffspace.hpp"
#include "lagprop/common.hpp"
#include "lagprop/propagate.hpp"
#include "lagprop/radial.hpp"

namespace lagprop {

/// Polynomial source for one mode: F_n(t) = sum_k poly[k] t^k.
struct ModeSource {
  std::vector<int> n;
  std::vector<cplx> poly;
};

/// Per-mode source F(flat index, t).
using SourceFn = std::function<cplx(std::size_t, double)>;

struct CauchyProblem {
  PropagatorSpec spec;  ///< rho, c, r; z is ignored
  double T = 1.0;
  CoefficientField initial;
  std::vector<ModeSource> poly_source;  ///< optional
  SourceFn source;                      ///< optional, added to poly_source
  std::vector<double> output_times;     ///< sorted, inside [0, T]

  int dim() const { return initial.dim(); }
};

/// Throws DomainError on any violated invariant.
void validate(const CauchyProblem& p);

struct Trajectory {
  std::vector<double> times;
  std::vector<CoefficientField> states;
  std::vector<std::vector<bool>> overflow_mask;  ///< [time][flat]; masked entries are 0
  bool any_overflow = false;

  /// l2 norm at output slot k over unmasked modes.
  double l2_norm(std::size_t k) const { return states[k].l2_norm(); }
};

inline constexpr int kDuhamelOrder = 16;

/// a_n(t) = e^{-it lambda_n} a_n(0) - i int_0^t e^{-i(t-s) lambda_n} F_n(s) ds
/// with lambda_n = (rho|n| + c)^r. The integral uses composite Gauss-Legendre
/// with one panel per unit time (at least one) of the given order. Modes with
/// t Im(lambda_n) > 700 are masked.
Trajectory solve(const CauchyProblem& p, int quad_order = kDuhamelOrder);

/// Per-mode source from a function of (x, t): Laguerre analysis of F(., t)
/// with the given shape, memoized per distinct t. Thread-safe.
SourceFn sampled_source(std::function<cplx(std::span<const double>, double)> F, std::vector<int> shape,
                        int quad_order = 0);

enum class Posedness { well_posed, ill_posed, boundary };
std::string to_string(Posedness p);

struct WellposednessReport {
  Posedness verdict = Posedness::well_posed;
  PropagatorVerdict propagator;
  cplx z_eff;                      ///< -i T rho^r
  std::vector<double> times;
  std::vector<double> h;           ///< fitted rate per time (NaN when the fit failed)
  std::vector<bool> fit_ok;
  std::vector<double> im_lambda;   ///< Im(lambda_n) per flat index
};

/// Verdict from classify_propagator at z = -i T rho^r, with the fitted decay
/// rate of the solved states at each output time (0 and T when none given).
WellposednessReport wellposedness_report(const CauchyProblem& p, double alpha, SpaceKind kind);

/// Diagonal problem on two-dimensional Hermite coefficients with eigenvalues
/// rho_h (2|m| + 2) + c_h.
struct HermiteProblem {
  cplx rho_h;
  cplx c_h;
  double T = 1.0;
  CoefficientField initial;  ///< Hermite field
  std::vector<double> output_times;
};

/// For a homogeneous one-dimensional problem with r = 1: rho_h = rho / 4,
/// c_h = c - rho / 2 and the bridged initial data, so that block n of the
/// Hermite side carries the eigenvalue rho n + c.
HermiteProblem to_harmonic_oscillator(const CauchyProblem& p);

cplx hermite_symbol(const HermiteProblem& hp, int total_degree);

Trajectory solve_hermite(const HermiteProblem& hp);

/// Maps each Hermite state back through bridge_hermite_to_laguerre.
Trajectory unbridge(const Trajectory& hermite, double tol = kRadialTol);

}  // namespace lagprop
