#include "lagprop/specfun.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lagprop {

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (count < 1 || !(lo > 0.0) || !(hi >= lo)) throw DomainError("log_spaced: need count >= 1 and 0 < lo <= hi");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
  return out;
}

namespace {

constexpr double kRescale = 1e150;
const double kLogRescale = std::log(kRescale);

// value * e^{scale}, without letting e^{scale} underflow on its own.
double unscale(double value, double scale) {
  if (value == 0.0) return 0.0;
  if (scale > -700.0 && scale < 700.0) return value * std::exp(scale);
  return std::copysign(std::exp(std::log(std::abs(value)) + scale), value);
}

}  // namespace

std::vector<double> laguerre_l(int n_max, double x) {
  if (n_max < 0) throw DomainError("laguerre_l: n_max must be >= 0");
  if (!std::isfinite(x)) throw DomainError("laguerre_l: x must be finite");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  double scale = -0.5 * x;
  double prev = 0.0, cur = 1.0;
  out[0] = unscale(cur, scale);
  for (int n = 0; n < n_max; ++n) {
    const double next = ((2.0 * n + 1.0 - x) * cur - n * prev) / (n + 1.0);
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      prev /= kRescale;
      cur /= kRescale;
      scale += kLogRescale;
    }
    out[n + 1] = unscale(cur, scale);
  }
  return out;
}

std::vector<double> hermite_h(int n_max, double x) {
  if (n_max < 0) throw DomainError("hermite_h: n_max must be >= 0");
  if (!std::isfinite(x)) throw DomainError("hermite_h: x must be finite");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  double scale = -0.5 * x * x;
  double prev = 0.0, cur = std::pow(kPi, -0.25);
  out[0] = unscale(cur, scale);
  for (int n = 0; n < n_max; ++n) {
    const double next = x * std::sqrt(2.0 / (n + 1.0)) * cur - std::sqrt(n / (n + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      prev /= kRescale;
      cur /= kRescale;
      scale += kLogRescale;
    }
    out[n + 1] = unscale(cur, scale);
  }
  return out;
}

// ---------------------------------------------------------------------------
// I0

namespace {

// Summed in extended precision: near the imaginary axis the terms grow to
// about I0(|w|) before cancelling down to J0-sized values.
cplx i0_series(cplx w) {
  using ld = long double;
  const std::complex<ld> wl(w.real(), w.imag());
  const std::complex<ld> q = wl * wl / ld(4);
  std::complex<ld> term = 1, sum = 1;
  const double kmin = 0.5 * std::abs(w);
  for (int k = 1; k < 1000; ++k) {
    term *= q / (ld(k) * ld(k));
    sum += term;
    if (k > kmin && std::abs(term) <= 1e-20L * std::abs(sum)) break;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// e^{-Re w} I0(w) for Re w >= 0, |w| large: both exponential branches of the
// expansion are kept so the result stays accurate up to the imaginary axis.
cplx i0_asymptotic_scaled(cplx w) {
  cplx s1 = 1.0, s2 = 1.0;
  double a = 1.0;
  double last = 1.0;
  const double aw = std::abs(w);
  cplx wk = 1.0;
  for (int k = 1; k < 200; ++k) {
    a *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k);
    wk *= w;
    const double mag = a / std::pow(aw, k);
    if (mag > last) break;  // optimal truncation
    const cplx t = a / wk;
    s1 += t;
    s2 += (k % 2 ? -1.0 : 1.0) * t;
    last = mag;
    if (mag < 1e-17) break;
  }
  const double re = w.real(), im = w.imag();
  const cplx lead = std::polar(1.0, im) * s1;
  cplx sub = 0.0;
  if (im != 0.0) {
    const double sgn = im > 0.0 ? 1.0 : -1.0;
    sub = cplx(0.0, sgn) * std::exp(-2.0 * re) * std::polar(1.0, -im) * s2;
  }
  return (lead + sub) / std::sqrt(2.0 * kPi * w);
}

}  // namespace

cplx bessel_i0_scaled(cplx w) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw DomainError("bessel_i0: argument must be finite");
  if (w.real() < 0.0) w = -w;  // I0 is even
  if (std::abs(w) <= kBesselSwitchRadius) return i0_series(w) * std::exp(-w.real());
  return i0_asymptotic_scaled(w);
}

cplx bessel_i0(cplx w) {
  static const double kMaxExp = std::log(DBL_MAX);
  if (std::abs(w.real()) > kMaxExp) throw OverflowError("bessel_i0: |Re w| exceeds the double exponent range");
  if (w.real() < 0.0) w = -w;
  if (std::abs(w) <= kBesselSwitchRadius) return i0_series(w);
  return i0_asymptotic_scaled(w) * std::exp(w.real());
}

// ---------------------------------------------------------------------------
// Gauss rules

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> offdiag) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return d;
  if (static_cast<int>(offdiag.size()) != n - 1) throw DomainError("tridiagonal_eigenvalues: off-diagonal must have n-1 entries");
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 100) throw std::runtime_error("tridiagonal_eigenvalues: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        bool deflated = false;
        for (; i >= l; --i) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            deflated = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (deflated) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

QuadratureRule laguerre_rule(int n) {
  std::vector<double> diag(n), off(n - 1);
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) off[k - 1] = k;
  auto nodes = tridiagonal_eigenvalues(diag, off);

  QuadratureRule rule;
  rule.kind = QuadratureKind::laguerre;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.lifted_weights.resize(n);
  // Polish in extended precision. The undamped L_n stays inside the long
  // double exponent range for every node of an order <= 512 rule, and the
  // weight formula is sensitive to node error near the origin.
  using ld = long double;
  auto lag = [](int m, ld x, ld& prev) {
    ld p = 0, c = 1;
    for (int k = 0; k < m; ++k) {
      const ld next = ((2 * k + 1 - x) * c - k * p) / (k + 1);
      p = c;
      c = next;
    }
    prev = p;
    return c;
  };
  for (int i = 0; i < n; ++i) {
    ld x = nodes[i];
    ld prev = 0;
    for (int it = 0; it < 8; ++it) {
      const ld ln = lag(n, x, prev);
      const ld denom = n * (ln - prev);
      if (denom == 0) break;
      const ld dx = x * ln / denom;
      x -= dx;
      if (std::abs(dx) <= 1e-19L * x) break;
    }
    const ld lnext = lag(n + 1, x, prev);
    const ld w = x / ((n + 1.0L) * (n + 1.0L) * lnext * lnext);
    rule.nodes[i] = static_cast<double>(x);
    rule.lifted_weights[i] = static_cast<double>(w * std::exp(x));
    rule.weights[i] = static_cast<double>(w);
  }
  return rule;
}

QuadratureRule hermite_rule(int n) {
  std::vector<double> diag(n, 0.0), off(n - 1);
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(0.5 * k);
  auto nodes = tridiagonal_eigenvalues(diag, off);

  QuadratureRule rule;
  rule.kind = QuadratureKind::hermite;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.lifted_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = nodes[i];
    for (int it = 0; it < 6; ++it) {
      const auto h = hermite_h(n, x);
      const double deriv = std::sqrt(2.0 * n) * h[n - 1] - x * h[n];
      if (deriv == 0.0) break;
      const double dx = h[n] / deriv;
      x -= dx;
      if (std::abs(dx) <= 4e-16 * std::max(1.0, std::abs(x))) break;
    }
    nodes[i] = x;
  }
  // exact reflection symmetry
  for (int i = 0; i < n / 2; ++i) {
    const double s = 0.5 * (nodes[n - 1 - i] - nodes[i]);
    nodes[i] = -s;
    nodes[n - 1 - i] = s;
  }
  if (n % 2) nodes[n / 2] = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = nodes[i];
    const double hprev = hermite_h(n - 1, x)[n - 1];
    const double lifted = 1.0 / (n * hprev * hprev);
    rule.nodes[i] = x;
    rule.lifted_weights[i] = lifted;
    rule.weights[i] = std::exp(std::log(lifted) - x * x);
  }
  return rule;
}

QuadratureRule legendre_rule(int n, double a, double b) {
  std::vector<double> diag(n, 0.0), off(n - 1);
  for (int k = 1; k < n; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  auto nodes = tridiagonal_eigenvalues(diag, off);

  auto legendre_pair = [n](double x) {
    double prev = 1.0, cur = x;
    if (n == 0) return std::pair{1.0, 0.0};
    for (int k = 1; k < n; ++k) {
      const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
      prev = cur;
      cur = next;
    }
    return std::pair{cur, prev};  // P_n, P_{n-1}
  };

  QuadratureRule rule;
  rule.kind = QuadratureKind::legendre;
  rule.order = n;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.lifted_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = nodes[i];
    double deriv = 0.0;
    for (int it = 0; it < 6; ++it) {
      const auto [pn, pm] = legendre_pair(x);
      deriv = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / deriv;
      x -= dx;
      if (std::abs(dx) <= 4e-16) break;
    }
    const auto [pn, pm] = legendre_pair(x);
    deriv = n * (x * pn - pm) / (x * x - 1.0);
    nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * deriv * deriv);
  }
  for (int i = 0; i < n / 2; ++i) {
    const double s = 0.5 * (nodes[n - 1 - i] - nodes[i]);
    nodes[i] = -s;
    nodes[n - 1 - i] = s;
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2) nodes[n / 2] = 0.0;
  const double half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = a + half * (nodes[i] + 1.0);
    rule.weights[i] *= half;
    rule.lifted_weights[i] = rule.weights[i];
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_rule(QuadratureKind kind, int order, double a, double b) {
  if (order < 1 || order > 512) throw DomainError("gauss_rule: order must be in [1, 512]");
  switch (kind) {
    case QuadratureKind::laguerre:
      return laguerre_rule(order);
    case QuadratureKind::hermite:
      return hermite_rule(order);
    case QuadratureKind::legendre:
      if (!(b > a)) throw DomainError("gauss_rule: legendre interval needs b > a");
      return legendre_rule(order, a, b);
  }
  throw DomainError("gauss_rule: unknown kind");
}

}  // namespace lagprop
