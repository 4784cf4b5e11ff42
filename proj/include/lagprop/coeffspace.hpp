#pragma once

// Truncated coefficient arrays over multi-indices, weighted sequence norms and
// tail-growth classification.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lagprop/common.hpp"

namespace lagprop {

enum class Basis { laguerre, hermite };

/// Complex coefficients a_n for n in [0,N_1) x ... x [0,N_d), stored row-major
/// (last axis fastest).
class CoefficientField {
 public:
  CoefficientField() = default;
  explicit CoefficientField(std::vector<int> shape, Basis basis = Basis::laguerre);

  /// The field with a single unit entry at multi-index n.
  static CoefficientField delta(std::vector<int> shape, std::span<const int> n, Basis basis = Basis::laguerre);

  int dim() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  Basis basis() const { return basis_; }
  void set_basis(Basis b) { basis_ = b; }

  cplx& operator[](std::size_t flat) { return data_[flat]; }
  const cplx& operator[](std::size_t flat) const { return data_[flat]; }
  cplx& at(std::span<const int> n) { return data_[flat_index(n)]; }
  const cplx& at(std::span<const int> n) const { return data_[flat_index(n)]; }
  cplx& at(std::initializer_list<int> n) { return at(std::span<const int>(n.begin(), n.size())); }
  const cplx& at(std::initializer_list<int> n) const { return at(std::span<const int>(n.begin(), n.size())); }

  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  /// Throws DomainError if n is out of range or has the wrong length.
  std::size_t flat_index(std::span<const int> n) const;
  std::vector<int> multi_index(std::size_t flat) const;
  /// |n| = n_1 + ... + n_d of the entry at `flat`.
  int total_degree(std::size_t flat) const;

  bool all_finite() const;
  double l2_norm() const;

 private:
  std::vector<int> shape_;
  std::vector<std::size_t> strides_;
  std::vector<cplx> data_;
  Basis basis_ = Basis::laguerre;
};

/// sup_n |a_n| <n>^N with <n> = (1 + |n|^2)^{1/2}.
double s_norm(const CoefficientField& c, int N);

/// l^p norm (p in {1, 2, inf}) of |a_n| exp(r |n|^{1/(2 alpha)}). Weights are
/// applied in log space, so large exponents do not overflow before the sum.
double theta_norm(const CoefficientField& c, double p, double r, double alpha);

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

class DegenerateFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GrowthFit {
  double h = 0.0;         ///< fitted rate; > 0 means decay
  double C = 0.0;         ///< fitted amplitude exp(log_C)
  double log_C = 0.0;
  double residual = 0.0;  ///< RMS deviation in log units
  std::size_t samples = 0;
};

/// Minimum number of nonzero entries fit_growth accepts.
inline constexpr std::size_t kMinFitEntries = 16;

/// Least-squares fit of log|a_n| ~ log C - h |n|^{1/alpha} over the tail half
/// (by |n|) of the nonzero entries.
GrowthFit fit_growth(const CoefficientField& c, double alpha);

/// Fit of log|a_n| ~ log C + p log<n> over the same tail; `h` holds p.
GrowthFit fit_power(const CoefficientField& c);

enum class GrowthKind { schwartz, tempered, roumieu, beurling, dual_roumieu, dual_beurling, unclassified };

std::string to_string(GrowthKind k);

struct GrowthProfile {
  GrowthKind kind = GrowthKind::unclassified;
  double alpha = 0.0;
  double h = 0.0;
  double C = 0.0;
  double residual = 0.0;
};

inline constexpr double kClassifyTol = 1e-3;
inline constexpr double kResidualThreshold = 0.5;

/// Tail heuristic:
///  - a power law in <n> fitting better than the stretched exponential -> tempered
///  - h >= tol -> roumieu(alpha); h <= -tol -> dual_roumieu(alpha); else tempered
///  - neither model within the residual threshold: schwartz if decaying,
///    unclassified otherwise.
/// Beurling kinds are never produced; a caller may assert them.
GrowthProfile classify(const CoefficientField& c, double alpha, double tol = kClassifyTol);

}  // namespace lagprop
