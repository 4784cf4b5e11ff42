#pragma once

// Laguerre and Hermite functions, the modified Bessel function I0 of complex
// argument, and Gauss quadrature rules.

#include <vector>

#include "lagprop/common.hpp"

namespace lagprop {

/// l_0(x)..l_{n_max}(x) with l_n(x) = L_n(x) e^{-x/2}.
///
/// The three-term recurrence runs on the damped functions with a running
/// log-scale, so neither the e^{-x/2} seed nor L_n(x) overflow for large x.
std::vector<double> laguerre_l(int n_max, double x);

/// Orthonormal Hermite functions h_0(x)..h_{n_max}(x).
std::vector<double> hermite_h(int n_max, double x);

/// I0(w) = sum_k (w/2)^{2k} / (k!)^2.
/// Throws OverflowError when |Re w| exceeds the exponent range of double.
cplx bessel_i0(cplx w);

/// e^{-|Re w|} I0(w). Never overflows; used inside the kernel formulas.
cplx bessel_i0_scaled(cplx w);

/// Radius at which bessel_i0 switches from the power series to the
/// two-sided large-argument expansion.
inline constexpr double kBesselSwitchRadius = 17.0;

enum class QuadratureKind { laguerre, hermite, legendre };

struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::legendre;
  int order = 0;
  std::vector<double> nodes;    ///< strictly increasing
  std::vector<double> weights;  ///< classical weights; may underflow to 0 for far Laguerre nodes
  /// Weights with the weight function divided out: w_i e^{x_i} (Laguerre),
  /// w_i e^{x_i^2} (Hermite), w_i (Legendre). Integrates unweighted integrands.
  std::vector<double> lifted_weights;
  double a = -1.0;  ///< Legendre interval
  double b = 1.0;
};

/// Gauss rule of the given order (1..512) from the Jacobi matrix of the family.
/// Nodes come from implicit-shift QL and are polished by Newton steps on the
/// orthonormal recurrence; weights use the Christoffel-type closed forms.
QuadratureRule gauss_rule(QuadratureKind kind, int order, double a = -1.0, double b = 1.0);

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with the given
/// diagonal and sub-diagonal (size n-1). Implicit-shift QL.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> offdiag);

}  // namespace lagprop
