#include "lagprop/radial.hpp"

#include <cmath>
#include <sstream>

namespace lagprop {

double c_coeff(int n, int k) {
  if (n < 0 || n > kBridgeMaxN || k < 0 || k > n) throw DomainError("c_coeff: requires 0 <= k <= n <= 500");
  // sqrt(pi) kept outside the exponential so that c_{0,0} is exactly sqrt(pi)
  const double lg = 0.5 * (std::lgamma(2.0 * k + 1) + std::lgamma(2.0 * (n - k) + 1)) - n * std::log(2.0) -
                    std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::sqrt(kPi) * std::exp(lg);
}

std::vector<double> probe_radii() { return log_spaced(0.05, 10.0, 20); }

void check_even(const SampledFunction& g, const char* who, double tol) {
  for (double x : probe_radii()) {
    const double p = x, m = -x;
    const double dev = std::abs(g(std::span<const double>(&p, 1)) - g(std::span<const double>(&m, 1)));
    if (!(dev <= tol)) {
      std::ostringstream msg;
      msg << who << ": function is not even at x = " << x << " (|g(x) - g(-x)| = " << dev << ")";
      throw EvennessError(msg.str());
    }
  }
}

SampledFunction sqrt_substitution(const SampledFunction& g) {
  check_even(g, "sqrt_substitution");
  return [g](std::span<const double> x) -> cplx {
    const double r = std::sqrt(x[0]);
    return g(std::span<const double>(&r, 1));
  };
}

SampledFunction sqrt_substitution_inverse(const SampledFunction& f) {
  return [f](std::span<const double> r) -> cplx {
    const double x = r[0] * r[0];
    return f(std::span<const double>(&x, 1));
  };
}

SampledFunction radialize(const SampledFunction& g) {
  check_even(g, "radialize");
  return [g](std::span<const double> x) -> cplx {
    const double r = std::hypot(x[0], x[1]);
    return g(std::span<const double>(&r, 1));
  };
}

double radiality_defect(const SampledFunction& phi) {
  double worst = 0.0;
  for (double r : probe_radii())
    for (int b = 0; b < 8; ++b) {
      const double th = 2 * kPi * b / 8 + 0.3;
      const double x[2] = {r * std::cos(th), r * std::sin(th)};
      const cplx base = phi(x);
      for (int m = 0; m < 8; ++m) {
        const double a = 2 * kPi * (m + 0.37) / 8;
        const double y[2] = {r * std::cos(th + a), r * std::sin(th + a)};
        worst = std::max(worst, std::abs(phi(y) - base));
      }
    }
  return worst;
}

CoefficientField bridge_laguerre_to_hermite(const CoefficientField& a) {
  if (a.dim() != 1) throw DomainError("bridge_laguerre_to_hermite: input must be one-dimensional");
  const int N = a.shape()[0];
  if (N - 1 > kBridgeMaxN) throw DomainError("bridge_laguerre_to_hermite: at most 501 modes");
  const int M = std::max(2 * N - 1, 0);
  CoefficientField b({M, M}, Basis::hermite);
  for (int n = 0; n < N; ++n) {
    const double sign = n % 2 ? -1.0 : 1.0;
    for (int k = 0; k <= n; ++k) b.at({2 * k, 2 * n - 2 * k}) = sign * c_coeff(n, k) * a[n];
  }
  return b;
}

CoefficientField bridge_hermite_to_laguerre(const CoefficientField& b, double tol) {
  if (b.dim() != 2) throw DomainError("bridge_hermite_to_laguerre: input must be two-dimensional");
  if (b.basis() != Basis::hermite) throw DomainError("bridge_hermite_to_laguerre: input must be a Hermite field");
  const int M1 = b.shape()[0], M2 = b.shape()[1];
  const int N = (std::min(M1, M2) + 1) / 2;
  if (N - 1 > kBridgeMaxN) throw DomainError("bridge_hermite_to_laguerre: field too large");

  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto m = b.multi_index(i);
    const double v = std::abs(b[i]);
    const bool odd = (m[0] % 2) || (m[1] % 2);
    const bool outside = !odd && (m[0] / 2 + m[1] / 2 >= N);
    if ((odd || outside) && !(v <= tol)) {
      std::ostringstream msg;
      msg << "bridge_hermite_to_laguerre: entry (" << m[0] << ", " << m[1] << ") = " << v
          << (odd ? " has an odd index" : " lies outside the complete blocks");
      throw NotRadialError(msg.str(), m[0], m[1], v);
    }
  }

  CoefficientField a({N});
  for (int n = 0; n < N; ++n) {
    const double sign = n % 2 ? -1.0 : 1.0;
    std::vector<cplx> v(n + 1);
    cplx mean = 0.0;
    for (int k = 0; k <= n; ++k) {
      v[k] = sign * b.at({2 * k, 2 * n - 2 * k}) / c_coeff(n, k);
      mean += v[k];
    }
    mean /= static_cast<double>(n + 1);
    int worst_k = 0;
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double dev = std::abs(v[k] - mean);
      if (dev > worst) {
        worst = dev;
        worst_k = k;
      }
    }
    if (!(worst <= tol)) {
      std::ostringstream msg;
      msg << "bridge_hermite_to_laguerre: block n = " << n << " disagrees at k = " << worst_k << " by " << worst;
      throw NotRadialError(msg.str(), n, worst_k, worst);
    }
    a[n] = mean;
  }
  return a;
}

SampledFunction spherical_average(SampledFunction phi, int M) {
  if (M < 8) throw DomainError("spherical_average: at least 8 angles are required");
  std::vector<double> cs(M), sn(M);
  for (int j = 0; j < M; ++j) {
    cs[j] = std::cos(2 * kPi * j / M);
    sn[j] = std::sin(2 * kPi * j / M);
  }
  return [phi = std::move(phi), cs, sn, M](std::span<const double> x) -> cplx {
    cplx s = 0.0;
    for (int j = 0; j < M; ++j) {
      const double y[2] = {cs[j] * x[0] - sn[j] * x[1], sn[j] * x[0] + cs[j] * x[1]};
      s += phi(y);
    }
    return s / static_cast<double>(M);
  };
}

}  // namespace lagprop
