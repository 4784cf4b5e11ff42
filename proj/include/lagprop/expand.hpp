#pragma once

// Analysis (samples -> coefficients) and synthesis (coefficients -> values) in
// the tensor Laguerre basis on the positive orthant and the tensor Hermite
// basis on R^d, d <= 3.

#include <span>
#include <vector>

#include "lagprop/coeffspace.hpp"
#include "lagprop/common.hpp"

namespace lagprop {

inline constexpr int kMaxDim = 3;

/// 2 * max(shape) + 16.
int default_quad_order(const std::vector<int>& shape);

/// a_n = sum_i w^_i f(x_i) prod_j l_{n_j}(x_{i,j}) on the tensor Gauss-Laguerre
/// grid with lifted weights. quad_order 0 selects default_quad_order.
/// Requires quad_order >= 2 * max(shape). Throws NonFiniteSampleError if f is
/// not finite at a node.
CoefficientField laguerre_analyze(const SampledFunction& f, const std::vector<int>& shape, int quad_order = 0);

/// Same with Gauss-Hermite nodes and h_n. The result is tagged Basis::hermite.
CoefficientField hermite_analyze(const SampledFunction& f, const std::vector<int>& shape, int quad_order = 0);

/// sum_n a_n prod_j l_{n_j}(x_j) at each point.
std::vector<cplx> laguerre_synthesize(const CoefficientField& c, const std::vector<Point>& points);
cplx laguerre_synthesize(const CoefficientField& c, std::span<const double> x);

/// sum_n b_n prod_j h_{n_j}(x_j) at each point.
std::vector<cplx> hermite_synthesize(const CoefficientField& c, const std::vector<Point>& points);
cplx hermite_synthesize(const CoefficientField& c, std::span<const double> x);

/// Least-squares coefficients from scattered samples (Householder QR with
/// column pivoting). Needs at least as many points as modes.
CoefficientField laguerre_fit(const std::vector<Point>& points, const std::vector<cplx>& values,
                              const std::vector<int>& shape);
CoefficientField hermite_fit(const std::vector<Point>& points, const std::vector<cplx>& values,
                             const std::vector<int>& shape);

}  // namespace lagprop
