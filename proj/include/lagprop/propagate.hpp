#pragma once

// Diagonal operators (rho|n| + c)^r and exp(z (rho|n| + c)^r), the closed-form
// kernel of exp(zE), kernel-based application and the continuity verdicts.

#include <array>
#include <string>
#include <vector>

#include "lagprop/coeffspace.hpp"
#include "lagprop/common.hpp"

namespace lagprop {

struct PropagatorSpec {
  cplx rho{1.0, 0.0};
  cplx c{0.0, 0.0};
  double r = 1.0;
  cplx z{0.0, 0.0};
};

class SingularSymbolError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Throws SingularSymbolError when r < 0 and -c/rho is a nonnegative integer,
/// DomainError when rho = 0.
void validate(const PropagatorSpec& spec);

/// (rho*degree + c)^r on the principal branch; 0^r = 0 for r > 0, 1 for r = 0.
cplx symbol(const PropagatorSpec& spec, int degree);

/// a_n -> (rho|n| + c)^r a_n.
CoefficientField apply_power(const PropagatorSpec& spec, const CoefficientField& a);

/// Modes whose growth exponent Re(z * symbol) exceeds this are masked.
inline constexpr double kOverflowExponent = 700.0;

struct ExpResult {
  CoefficientField field;          ///< masked entries are set to 0
  std::vector<bool> overflow;      ///< per flat index
  bool any_overflow = false;
};

/// a_n -> exp(z (rho|n| + c)^r) a_n with a per-mode overflow mask.
ExpResult apply_exp(const PropagatorSpec& spec, const CoefficientField& a);

/// Per-axis w_j = e^{z_j}. Requires |w_j| <= 1 and |1 - w_j| > 1e-12.
struct KernelParams {
  std::vector<cplx> w;

  KernelParams() = default;
  explicit KernelParams(std::vector<cplx> w_per_axis);
  /// The same w on every axis.
  KernelParams(cplx w_all, int dim);
  static KernelParams from_z(cplx z, int dim);

  int dim() const { return static_cast<int>(w.size()); }
  bool unimodular() const;
};

/// prod_j (1-w)^{-1} exp(-(1+w)/(2(1-w)) (x_j+y_j)) I0(2 sqrt(x_j y_j w)/(1-w)),
/// evaluated in log space with the scaled I0.
cplx kernel_eval(const KernelParams& kp, std::span<const double> x, std::span<const double> y);

/// One-dimensional factor of kernel_eval.
cplx kernel_eval_1d(cplx w, double x, double y);

struct KernelApplyResult {
  std::vector<cplx> values;
  bool converged = true;       ///< doubling the order moved no value by more than 1e-4 relative
  bool oscillatory = false;    ///< some |w_j| = 1; accuracy not guaranteed
  double max_rel_change = 0.0;
};

inline constexpr int kDefaultKernelOrder = 128;
inline constexpr double kKernelConvergenceTol = 1e-4;

/// (K f)(x) = int f(y) K(x, y) dy over the orthant at each point, by tensor
/// Gauss-Laguerre on y = 2u (exact for polynomial * e^{-y/2} integrands).
/// Evaluates at quad_order and 2*quad_order and returns the latter.
KernelApplyResult kernel_apply(const KernelParams& kp, const SampledFunction& f, const std::vector<Point>& points,
                               int quad_order = kDefaultKernelOrder);

/// Lazy single-order form of kernel_apply. f is sampled once, on first use.
SampledFunction kernel_operator(const KernelParams& kp, SampledFunction f, int quad_order = kDefaultKernelOrder);

struct HilleHardyCheck {
  cplx series;
  cplx closed;
  double abs_err = 0.0;
};

/// sum_{n<=N} l_n(x) l_n(y) w^n against the closed form, |w| <= 0.999.
HilleHardyCheck hille_hardy_check(cplx w, double x, double y, int N);

enum class SpaceKind { roumieu, beurling };
enum class Verdict { isomorphism, injection_not_surjection, discontinuous };

std::string to_string(Verdict v);
std::string to_string(SpaceKind k);

struct PropagatorVerdict {
  Verdict verdict = Verdict::isomorphism;
  bool boundary = false;  ///< alpha == 1/r with Re z != 0
};

/// Lookup of the continuity of exp(z E^r_c) on the alpha-spaces of the given
/// kind. `c` does not enter the table. Requires z != 0, alpha > 0, r > 0.
PropagatorVerdict classify_propagator(cplx z, double r, cplx c, double alpha, SpaceKind kind);

struct IllposednessReport {
  std::array<int, 3> M{};
  std::array<double, 3> S{};
  std::array<double, 3> log_S{};
  double ratio = 0.0;  ///< S(N) / S(N/4)
  bool strictly_increasing = false;
};

inline constexpr double kIllposednessRate = 0.25;

/// Partial sups S(M) = max_{n<=M} |e^{zn} a_n| e^{-h n^{1/alpha}} with
/// a_n = e^{-(1+n)^{1/alpha}}, at M = N/4, N/2, N. Computed in log space.
IllposednessReport demonstrate_illposedness(cplx z, double alpha, int N, double h = kIllposednessRate);

}  // namespace lagprop
