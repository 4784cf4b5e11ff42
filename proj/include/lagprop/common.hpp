#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagprop {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// A point in R^d or R^d_+ (d <= 3 throughout the library).
using Point = std::vector<double>;

/// Black-box evaluator. Must be deterministic and finite wherever it is sampled.
using SampledFunction = std::function<cplx(std::span<const double>)>;

/// Raised for precondition violations on arguments (bad orders, shapes, ranges).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a value cannot be represented in double precision.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Raised when an evaluator returns NaN/inf on a quadrature node.
class NonFiniteSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a nominally even function is not even at the probe points.
class EvennessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Probe grid used by the verifiers: `count` points log-spaced in [lo, hi].
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace lagprop
