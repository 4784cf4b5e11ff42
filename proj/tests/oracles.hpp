#pragma once

// Test-only reference computations. Nothing here calls into the library paths
// it is used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

inline double laguerre_poly_explicit(int n, double x) {
  switch (n) {
    case 0: return 1.0;
    case 1: return 1.0 - x;
    case 2: return (x * x - 4 * x + 2) / 2;
    case 3: return (-x * x * x + 9 * x * x - 18 * x + 6) / 6;
    case 4: return (std::pow(x, 4) - 16 * std::pow(x, 3) + 72 * x * x - 96 * x + 24) / 24;
    case 5: return (-std::pow(x, 5) + 25 * std::pow(x, 4) - 200 * std::pow(x, 3) + 600 * x * x - 600 * x + 120) / 120;
    default: return NAN;
  }
}

inline double hermite_function_explicit(int n, double x) {
  double h = NAN;
  switch (n) {
    case 0: h = 1.0; break;
    case 1: h = 2 * x; break;
    case 2: h = 4 * x * x - 2; break;
    case 3: h = 8 * x * x * x - 12 * x; break;
    case 4: h = 16 * std::pow(x, 4) - 48 * x * x + 12; break;
    default: return NAN;
  }
  return h * std::exp(-0.5 * x * x) / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(pi));
}

/// Power series for I0 summed in long double until the terms are negligible.
inline cplx i0_series(cplx w) {
  using ld = long double;
  const std::complex<ld> q = std::complex<ld>(w.real(), w.imag()) * std::complex<ld>(w.real(), w.imag()) / ld(4);
  std::complex<ld> term = 1, sum = 1;
  for (int k = 1; k < 400; ++k) {
    term *= q / (ld(k) * ld(k));
    sum += term;
    if (k > 30 && std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

/// Laguerre functions by the plain (undamped) polynomial recurrence in long double.
inline std::vector<double> laguerre_functions_ld(int n_max, double x) {
  using ld = long double;
  std::vector<double> out(n_max + 1);
  ld prev = 0, cur = 1;
  const ld damp = std::exp(-ld(x) / 2);
  out[0] = static_cast<double>(damp);
  for (int n = 0; n < n_max; ++n) {
    const ld next = ((2 * n + 1 - ld(x)) * cur - n * prev) / (n + 1);
    prev = cur;
    cur = next;
    out[n + 1] = static_cast<double>(cur * damp);
  }
  return out;
}

/// Truncated eigen-series sum_{k<=N} w^k l_k(x) l_k(y).
inline cplx kernel_eigen_series(cplx w, double x, double y, int n_terms) {
  const auto lx = laguerre_functions_ld(n_terms, x);
  const auto ly = laguerre_functions_ld(n_terms, y);
  cplx s = 0, wk = 1;
  for (int k = 0; k <= n_terms; ++k) {
    s += wk * lx[k] * ly[k];
    wk *= w;
  }
  return s;
}

/// Classical RK4 for a' = -i (lambda a + F(t)), fixed step.
inline cplx rk4_mode(cplx lambda, cplx a0, const std::function<cplx(double)>& source, double T, double dt) {
  const cplx I(0, 1);
  auto rhs = [&](double t, cplx a) { return -I * (lambda * a + source(t)); };
  const int steps = static_cast<int>(std::llround(T / dt));
  const double h = T / steps;
  cplx a = a0;
  double t = 0;
  for (int s = 0; s < steps; ++s) {
    const cplx k1 = rhs(t, a);
    const cplx k2 = rhs(t + h / 2, a + h / 2 * k1);
    const cplx k3 = rhs(t + h / 2, a + h / 2 * k2);
    const cplx k4 = rhs(t + h, a + h * k3);
    a += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  return a;
}

/// Composite trapezoid over [-L, L]; for smooth integrands decaying like a
/// Gaussian this is spectrally accurate.
inline cplx trapezoid(const std::function<cplx(double)>& f, double L, int panels) {
  const double h = 2 * L / panels;
  cplx s = 0.5 * (f(-L) + f(L));
  for (int i = 1; i < panels; ++i) s += f(-L + i * h);
  return s * h;
}

/// Ordinary least squares slope/intercept of y on x.
inline std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const long double n = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += (long double)x[i] * x[i];
    sxy += (long double)x[i] * y[i];
  }
  const long double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const long double icpt = (sy - slope * sx) / n;
  return {static_cast<double>(slope), static_cast<double>(icpt)};
}

}  // namespace oracle
