#include "lagprop/expand.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "lagprop/specfun.hpp"
#include "parallel.hpp"

namespace lagprop {

namespace {

using Family = std::vector<double> (*)(int, double);

void check_shape(const std::vector<int>& shape, const char* who) {
  if (shape.empty() || static_cast<int>(shape.size()) > kMaxDim)
    throw DomainError(std::string(who) + ": dimension must be 1.." + std::to_string(kMaxDim));
  for (int n : shape)
    if (n < 0) throw DomainError(std::string(who) + ": negative truncation");
}

bool has_empty_axis(const std::vector<int>& shape) {
  return std::any_of(shape.begin(), shape.end(), [](int n) { return n == 0; });
}

CoefficientField analyze(const SampledFunction& f, const std::vector<int>& shape, int quad_order, QuadratureKind kind,
                         Family family, Basis basis, const char* who) {
  check_shape(shape, who);
  if (has_empty_axis(shape)) return CoefficientField(shape, basis);
  const int nmax = *std::max_element(shape.begin(), shape.end());
  if (quad_order == 0) quad_order = default_quad_order(shape);
  if (quad_order < 2 * nmax)
    throw DomainError(std::string(who) + ": quad_order must be at least 2 * max(shape)");

  const QuadratureRule rule = gauss_rule(kind, quad_order);
  const int q = quad_order;
  const int d = static_cast<int>(shape.size());

  // B[n][i] = lifted weight * basis function, per axis size nmax x q
  std::vector<std::vector<double>> B(nmax, std::vector<double>(q));
  for (int i = 0; i < q; ++i) {
    const auto phi = family(nmax - 1, rule.nodes[i]);
    for (int n = 0; n < nmax; ++n) B[n][i] = rule.lifted_weights[i] * phi[n];
  }

  // samples on the tensor grid, row-major in the node multi-index
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= q;
  std::vector<cplx> T(total);
  std::vector<double> x(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int j = d - 1; j >= 0; --j) {
      x[j] = rule.nodes[rem % q];
      rem /= q;
    }
    const cplx v = f(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream msg;
      msg << who << ": non-finite sample at (";
      for (int j = 0; j < d; ++j) msg << (j ? ", " : "") << x[j];
      msg << ")";
      throw NonFiniteSampleError(msg.str());
    }
    T[flat] = v;
  }

  // contract one axis at a time
  std::vector<int> dims(d, q);
  for (int j = 0; j < d; ++j) {
    std::size_t outer = 1, inner = 1;
    for (int k = 0; k < j; ++k) outer *= dims[k];
    for (int k = j + 1; k < d; ++k) inner *= dims[k];
    const int N = shape[j];
    std::vector<cplx> out(outer * N * inner);
    for (std::size_t o = 0; o < outer; ++o)
      for (int n = 0; n < N; ++n) {
        cplx* dst = &out[(o * N + n) * inner];
        for (int i = 0; i < q; ++i) {
          const double b = B[n][i];
          const cplx* src = &T[(o * q + i) * inner];
          for (std::size_t in = 0; in < inner; ++in) dst[in] += b * src[in];
        }
      }
    T.swap(out);
    dims[j] = N;
  }

  CoefficientField c(shape, basis);
  c.data() = std::move(T);
  return c;
}

cplx synthesize_one(const CoefficientField& c, std::span<const double> x, Family family) {
  const int d = c.dim();
  if (static_cast<int>(x.size()) != d) throw DomainError("synthesize: point dimension does not match the field");
  if (c.empty()) return 0.0;
  std::vector<std::vector<double>> phi(d);
  for (int j = 0; j < d; ++j) phi[j] = family(c.shape()[j] - 1, x[j]);
  // nested accumulation: contract the last axis first
  const auto& shape = c.shape();
  std::vector<cplx> cur(c.data());
  std::size_t len = cur.size();
  for (int j = d - 1; j >= 0; --j) {
    const std::size_t N = shape[j];
    const std::size_t outer = len / N;
    std::vector<cplx> next(outer);
    for (std::size_t o = 0; o < outer; ++o) {
      cplx s = 0.0;
      for (std::size_t n = 0; n < N; ++n) s += cur[o * N + n] * phi[j][n];
      next[o] = s;
    }
    cur.swap(next);
    len = outer;
  }
  return cur[0];
}

std::vector<cplx> synthesize(const CoefficientField& c, const std::vector<Point>& points, Family family) {
  std::vector<cplx> out(points.size());
  detail::parallel_for(points.size(), [&](std::size_t i) { out[i] = synthesize_one(c, points[i], family); });
  return out;
}

CoefficientField fit(const std::vector<Point>& points, const std::vector<cplx>& values, const std::vector<int>& shape,
                     Family family, Basis basis, const char* who) {
  check_shape(shape, who);
  if (points.size() != values.size()) throw DomainError(std::string(who) + ": points and values differ in length");
  CoefficientField c(shape, basis);
  if (c.empty()) return c;
  if (points.size() < c.size()) throw DomainError(std::string(who) + ": fewer samples than modes");
  const int d = static_cast<int>(shape.size());
  Eigen::MatrixXcd A(points.size(), c.size());
  Eigen::VectorXcd rhs(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (static_cast<int>(points[p].size()) != d) throw DomainError(std::string(who) + ": point dimension mismatch");
    std::vector<std::vector<double>> phi(d);
    for (int j = 0; j < d; ++j) phi[j] = family(shape[j] - 1, points[p][j]);
    for (std::size_t m = 0; m < c.size(); ++m) {
      const auto n = c.multi_index(m);
      double v = 1.0;
      for (int j = 0; j < d; ++j) v *= phi[j][n[j]];
      A(p, m) = v;
    }
    rhs(p) = values[p];
  }
  const Eigen::VectorXcd sol = A.colPivHouseholderQr().solve(rhs);
  for (std::size_t m = 0; m < c.size(); ++m) c[m] = sol(m);
  return c;
}

}  // namespace

int default_quad_order(const std::vector<int>& shape) {
  const int nmax = shape.empty() ? 0 : *std::max_element(shape.begin(), shape.end());
  return 2 * nmax + 16;
}

CoefficientField laguerre_analyze(const SampledFunction& f, const std::vector<int>& shape, int quad_order) {
  return analyze(f, shape, quad_order, QuadratureKind::laguerre, &laguerre_l, Basis::laguerre, "laguerre_analyze");
}

CoefficientField hermite_analyze(const SampledFunction& f, const std::vector<int>& shape, int quad_order) {
  return analyze(f, shape, quad_order, QuadratureKind::hermite, &hermite_h, Basis::hermite, "hermite_analyze");
}

std::vector<cplx> laguerre_synthesize(const CoefficientField& c, const std::vector<Point>& points) {
  return synthesize(c, points, &laguerre_l);
}

cplx laguerre_synthesize(const CoefficientField& c, std::span<const double> x) {
  return synthesize_one(c, x, &laguerre_l);
}

std::vector<cplx> hermite_synthesize(const CoefficientField& c, const std::vector<Point>& points) {
  return synthesize(c, points, &hermite_h);
}

cplx hermite_synthesize(const CoefficientField& c, std::span<const double> x) {
  return synthesize_one(c, x, &hermite_h);
}

CoefficientField laguerre_fit(const std::vector<Point>& points, const std::vector<cplx>& values,
                              const std::vector<int>& shape) {
  return fit(points, values, shape, &laguerre_l, Basis::laguerre, "laguerre_fit");
}

CoefficientField hermite_fit(const std::vector<Point>& points, const std::vector<cplx>& values,
                             const std::vector<int>& shape) {
  return fit(points, values, shape, &hermite_h, Basis::hermite, "hermite_fit");
}

}  // namespace lagprop
