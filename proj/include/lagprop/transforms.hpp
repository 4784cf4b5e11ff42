#pragma once

// Fractional Hankel-Clifford, fractional Hankel and fractional Fourier
// transforms, with verifiers for the identities tying them together.

#include <vector>

#include "lagprop/coeffspace.hpp"
#include "lagprop/common.hpp"
#include "lagprop/propagate.hpp"

namespace lagprop {

/// Per-axis phases t_j; the transform multiplies by e^{i sum_j t_j n_j}.
struct FracOrder {
  std::vector<double> t;
  int dim() const { return static_cast<int>(t.size()); }
};

/// Multiplier form: a_n -> prod_j e^{i t_j n_j} a_n.
CoefficientField hankel_clifford_frac(const FracOrder& order, const CoefficientField& a);

/// Kernel form via kernel_apply with w_j = e^{i t_j}. Every t_j must be
/// nonzero modulo 2 pi.
KernelApplyResult hankel_clifford_kernel(const FracOrder& order, const SampledFunction& f,
                                         const std::vector<Point>& points, int quad_order = kDefaultKernelOrder);

/// H_t g(x) = sum_n a_n e^{int} l_n(x^2), where a are the Laguerre
/// coefficients (`shape` modes) of f(x) = g(sqrt x). g must be even.
SampledFunction frac_hankel(double t, const SampledFunction& g, int shape, int quad_order = 0);

/// b_n -> e^{-i pi rho |n| / 2} b_n on a Hermite field.
CoefficientField frac_fourier(double rho, const CoefficientField& b);

struct Frac1Report {
  double hankel_vs_multiplier = 0.0;  ///< H_t g(x) against (e^{itE} f)(x^2)
  double multiplier_vs_kernel = 0.0;  ///< against the kernel leg (NaN when skipped)
  double hankel_vs_kernel = 0.0;
  double max_abs_error = 0.0;
  bool kernel_skipped = false;        ///< e^{it} = 1 has no kernel form
  bool kernel_oscillatory = false;
  bool kernel_converged = true;
};

/// Evaluates the three legs at the probe points x in (0.05, 10) and returns
/// pairwise maximum errors.
Frac1Report verify_frac1(const SampledFunction& g, double t, int shape, int quad_order = 0,
                         int kernel_order = kDefaultKernelOrder);

struct Frac3Report {
  double literal_error = 0.0;    ///< with the prefactor e^{i pi (2 rho - 1/2) / 4}
  double corrected_error = 0.0;  ///< with prefactor 1
  double radiality_defect = 0.0;
};

/// Compares F_rho g~ (two-dimensional Hermite multiplier on the Hermite
/// analysis of g~) with prefactor * (I_{e^{-i rho pi},0} f)(x1^2 + x2^2), f the
/// square-root substitution of the profile of g~, at 20 probe points. Throws
/// NotRadialError when g~ is not radial at the probe radii.
Frac3Report verify_frac3(const SampledFunction& g_radial, double rho, int shape, int quad_order = 0);

/// Probe points in the plane used by verify_frac3: (s_i, s_{19-i}) over the
/// 20 log-spaced radii.
std::vector<Point> frac3_probe_points();

}  // namespace lagprop
