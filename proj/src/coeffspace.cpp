#include "lagprop/coeffspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lagprop {

CoefficientField::CoefficientField(std::vector<int> shape, Basis basis) : shape_(std::move(shape)), basis_(basis) {
  if (shape_.empty()) throw DomainError("CoefficientField: dimension must be >= 1");
  std::size_t total = 1;
  for (int n : shape_) {
    if (n < 0) throw DomainError("CoefficientField: negative truncation");
    total *= static_cast<std::size_t>(n);
  }
  strides_.assign(shape_.size(), 1);
  for (int j = static_cast<int>(shape_.size()) - 2; j >= 0; --j) strides_[j] = strides_[j + 1] * shape_[j + 1];
  data_.assign(total, cplx(0.0, 0.0));
}

CoefficientField CoefficientField::delta(std::vector<int> shape, std::span<const int> n, Basis basis) {
  CoefficientField f(std::move(shape), basis);
  f.at(n) = 1.0;
  return f;
}

std::size_t CoefficientField::flat_index(std::span<const int> n) const {
  if (n.size() != shape_.size()) throw DomainError("CoefficientField: multi-index has wrong length");
  std::size_t flat = 0;
  for (std::size_t j = 0; j < n.size(); ++j) {
    if (n[j] < 0 || n[j] >= shape_[j]) throw DomainError("CoefficientField: multi-index out of range");
    flat += strides_[j] * static_cast<std::size_t>(n[j]);
  }
  return flat;
}

std::vector<int> CoefficientField::multi_index(std::size_t flat) const {
  std::vector<int> n(shape_.size());
  for (std::size_t j = 0; j < shape_.size(); ++j) {
    n[j] = static_cast<int>(flat / strides_[j]);
    flat %= strides_[j];
  }
  return n;
}

int CoefficientField::total_degree(std::size_t flat) const {
  int s = 0;
  for (std::size_t j = 0; j < shape_.size(); ++j) {
    s += static_cast<int>(flat / strides_[j]);
    flat %= strides_[j];
  }
  return s;
}

bool CoefficientField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

double CoefficientField::l2_norm() const {
  // scaled accumulation so wide dynamic ranges neither overflow nor underflow
  double scale = 0.0;
  for (const auto& v : data_) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v / scale);
  return scale * std::sqrt(s);
}

double s_norm(const CoefficientField& c, int N) {
  double best = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double a = std::abs(c[i]);
    if (a == 0.0) continue;
    const double n = c.total_degree(i);
    best = std::max(best, a * std::pow(1.0 + n * n, 0.5 * N));
  }
  return best;
}

double theta_norm(const CoefficientField& c, double p, double r, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("theta_norm: alpha must be positive");
  if (p != 1.0 && p != 2.0 && p != kInfNorm) throw DomainError("theta_norm: p must be 1, 2 or inf");
  std::vector<double> logs;
  logs.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double a = std::abs(c[i]);
    if (a == 0.0) continue;
    logs.push_back(std::log(a) + r * std::pow(static_cast<double>(c.total_degree(i)), 0.5 / alpha));
  }
  if (logs.empty()) return 0.0;
  const double top = *std::max_element(logs.begin(), logs.end());
  if (p == kInfNorm) return std::exp(top);
  double s = 0.0;
  for (double l : logs) s += std::exp(p * (l - top));
  return std::exp(top) * std::pow(s, 1.0 / p);
}

namespace {

struct TailSample {
  double degree;
  double log_abs;
};

std::vector<TailSample> tail_samples(const CoefficientField& c) {
  std::vector<std::pair<int, std::size_t>> nz;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (std::abs(c[i]) > 0.0) nz.emplace_back(c.total_degree(i), i);
  if (nz.size() < kMinFitEntries)
    throw DegenerateFitError("fit_growth: fewer than " + std::to_string(kMinFitEntries) + " nonzero entries");
  std::stable_sort(nz.begin(), nz.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<TailSample> out;
  for (std::size_t j = nz.size() / 2; j < nz.size(); ++j)
    out.push_back({static_cast<double>(nz[j].first), std::log(std::abs(c[nz[j].second]))});
  return out;
}

// y ~ b0 + b1 u by ordinary least squares, centered for conditioning.
GrowthFit line_fit(const std::vector<double>& u, const std::vector<double>& y) {
  const double n = static_cast<double>(u.size());
  const double mu = std::accumulate(u.begin(), u.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double suu = 0.0, suy = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suy += (u[i] - mu) * (y[i] - my);
  }
  if (!(suu > 0.0)) throw DegenerateFitError("fit_growth: tail entries share a single degree");
  const double slope = suy / suu;
  const double icpt = my - slope * mu;
  double rss = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double e = y[i] - icpt - slope * u[i];
    rss += e * e;
  }
  GrowthFit f;
  f.h = slope;
  f.log_C = icpt;
  f.C = std::exp(icpt);
  f.residual = std::sqrt(rss / n);
  f.samples = u.size();
  return f;
}

}  // namespace

GrowthFit fit_growth(const CoefficientField& c, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("fit_growth: alpha must be positive");
  const auto tail = tail_samples(c);
  std::vector<double> u, y;
  for (const auto& s : tail) {
    u.push_back(std::pow(s.degree, 1.0 / alpha));
    y.push_back(s.log_abs);
  }
  auto f = line_fit(u, y);
  f.h = -f.h;
  return f;
}

GrowthFit fit_power(const CoefficientField& c) {
  const auto tail = tail_samples(c);
  std::vector<double> u, y;
  for (const auto& s : tail) {
    u.push_back(0.5 * std::log1p(s.degree * s.degree));
    y.push_back(s.log_abs);
  }
  return line_fit(u, y);
}

std::string to_string(GrowthKind k) {
  switch (k) {
    case GrowthKind::schwartz: return "schwartz";
    case GrowthKind::tempered: return "tempered";
    case GrowthKind::roumieu: return "roumieu";
    case GrowthKind::beurling: return "beurling";
    case GrowthKind::dual_roumieu: return "dual_roumieu";
    case GrowthKind::dual_beurling: return "dual_beurling";
    case GrowthKind::unclassified: return "unclassified";
  }
  return "unclassified";
}

GrowthProfile classify(const CoefficientField& c, double alpha, double tol) {
  const GrowthFit ex = fit_growth(c, alpha);
  const GrowthFit pw = fit_power(c);
  GrowthProfile g;
  g.alpha = alpha;
  g.h = ex.h;
  g.C = ex.C;
  g.residual = ex.residual;
  if (ex.residual > kResidualThreshold && pw.residual > kResidualThreshold) {
    g.kind = ex.h > 0.0 ? GrowthKind::schwartz : GrowthKind::unclassified;
    return g;
  }
  if (pw.residual < ex.residual) {
    g.kind = GrowthKind::tempered;
    return g;
  }
  if (ex.h >= tol)
    g.kind = GrowthKind::roumieu;
  else if (ex.h <= -tol)
    g.kind = GrowthKind::dual_roumieu;
  else
    g.kind = GrowthKind::tempered;
  return g;
}

}  // namespace lagprop
