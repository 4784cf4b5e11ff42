#pragma once

// Square-root substitution, radialization, the two-dimensional
// Laguerre <-> Hermite coefficient bridge and the spherical average.

#include <vector>

#include "lagprop/coeffspace.hpp"
#include "lagprop/common.hpp"

namespace lagprop {

/// c_{n,k} = sqrt(pi) sqrt((2k)! (2n-2k)!) / (2^n k! (n-k)!), 0 <= k <= n <= 500.
double c_coeff(int n, int k);

inline constexpr int kBridgeMaxN = 500;

/// Probe radii used by the evenness and radiality checks.
std::vector<double> probe_radii();

inline constexpr double kEvennessTol = 1e-9;

/// Throws EvennessError when |g(x) - g(-x)| > tol at a probe point.
void check_even(const SampledFunction& g, const char* who, double tol = kEvennessTol);

/// f(x) = g(sqrt x) for even g on R.
SampledFunction sqrt_substitution(const SampledFunction& g);

/// g(r) = f(r^2).
SampledFunction sqrt_substitution_inverse(const SampledFunction& f);

/// g~(x1, x2) = g(sqrt(x1^2 + x2^2)) for even g on R.
SampledFunction radialize(const SampledFunction& g);

/// max |phi(R x) - phi(x)| over probe radii, 8 base angles and 8 rotations.
double radiality_defect(const SampledFunction& phi);

/// b_{(2k, 2n-2k)} = (-1)^n c_{n,k} a_n for 0 <= k <= n < N; Hermite shape
/// (2N-1, 2N-1); all other entries zero.
CoefficientField bridge_laguerre_to_hermite(const CoefficientField& a);

class NotRadialError : public std::runtime_error {
 public:
  NotRadialError(const std::string& msg, int n, int k, double deviation)
      : std::runtime_error(msg), n(n), k(k), deviation(deviation) {}
  int n;  ///< block index (total degree / 2); for a parity violation, the first index
  int k;  ///< position in the block; for a parity violation, the second index
  double deviation;
};

inline constexpr double kRadialTol = 1e-9;

/// Inverse of the bridge. Odd-index entries must be <= tol in modulus and
/// (-1)^n b_{(2k,2n-2k)} / c_{n,k} must agree across k within tol; the result
/// is the average. Blocks that do not fit the shape must vanish.
CoefficientField bridge_hermite_to_laguerre(const CoefficientField& b, double tol = kRadialTol);

/// (1/M) sum_j phi(R_{2 pi j / M} x), M >= 8.
SampledFunction spherical_average(SampledFunction phi, int M);

}  // namespace lagprop
