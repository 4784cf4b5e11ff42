#include <cmath>
#include <random>

#include "doctest.h"
#include "lagprop/expand.hpp"
#include "lagprop/radial.hpp"
#include "lagprop/specfun.hpp"
#include "oracles.hpp"

using namespace lagprop;

namespace {

cplx at1(const SampledFunction& f, double x) { return f(std::span<const double>(&x, 1)); }
cplx at2(const SampledFunction& f, double x, double y) {
  const double p[2] = {x, y};
  return f(p);
}

}  // namespace

TEST_CASE("c_coeff: values, bound, factorial oracle") {
  CHECK(c_coeff(0, 0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-15));
  CHECK(c_coeff(1, 0) == doctest::Approx(std::sqrt(2 * kPi) / 2).epsilon(1e-15));
  CHECK(c_coeff(1, 1) == doctest::Approx(std::sqrt(2 * kPi) / 2).epsilon(1e-15));
  for (int n = 0; n <= 20; ++n)
    for (int k = 0; k <= n; ++k) {
      const double direct = std::sqrt(kPi) * std::sqrt(std::tgamma(2.0 * k + 1) * std::tgamma(2.0 * (n - k) + 1)) /
                            (std::pow(2.0, n) * std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0));
      CHECK(c_coeff(n, k) == doctest::Approx(direct).epsilon(1e-12));
      CHECK(c_coeff(n, k) == doctest::Approx(c_coeff(n, n - k)).epsilon(1e-14));
    }
  double top = 0;
  for (int n = 0; n <= 60; ++n)
    for (int k = 0; k <= n; ++k) {
      CHECK(c_coeff(n, k) >= 0.0);
      top = std::max(top, c_coeff(n, k));
    }
  CHECK(top <= std::sqrt(kPi) + 1e-12);
  CHECK(std::isfinite(c_coeff(500, 250)));
  CHECK_THROWS_AS(c_coeff(501, 0), DomainError);
  CHECK_THROWS_AS(c_coeff(3, 4), DomainError);
  CHECK_THROWS_AS(c_coeff(3, -1), DomainError);

  // l_0(x1^2 + x2^2) = sqrt(pi) h_0(x1) h_0(x2)
  for (double x1 : {0.0, 0.4, 1.3})
    for (double x2 : {0.2, 2.0}) {
      const double lhs = std::exp(-(x1 * x1 + x2 * x2) / 2);
      const double rhs = c_coeff(0, 0) * oracle::hermite_function_explicit(0, x1) *
                         oracle::hermite_function_explicit(0, x2);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
}

TEST_CASE("sqrt_substitution and its inverse") {
  SampledFunction g = [](std::span<const double> r) -> cplx { return std::exp(-r[0] * r[0] / 2); };
  const auto f = sqrt_substitution(g);
  for (double x : {0.0, 0.5, 3.0, 40.0}) CHECK(std::abs(at1(f, x) - std::exp(-x / 2)) <= 1e-16);
  const auto back = sqrt_substitution_inverse(f);
  for (double r : probe_radii()) CHECK(at1(back, r) == at1(g, r));

  SampledFunction h2 = [](std::span<const double> x) -> cplx { return hermite_h(2, x[0])[2]; };
  const auto f2 = sqrt_substitution(h2);
  CHECK(at1(f2, 1.0) == at1(h2, 1.0));
  // h_2(sqrt x) = (2x - 1) e^{-x/2} / (sqrt 2 pi^{1/4}) lives on l_0, l_1
  const auto a = laguerre_analyze(f2, {10});
  for (int n = 2; n < 10; ++n) CHECK(std::abs(a[n]) <= 1e-12);

  SampledFunction odd = [](std::span<const double> x) -> cplx { return x[0] * std::exp(-x[0] * x[0]); };
  CHECK_THROWS_AS(sqrt_substitution(odd), EvennessError);
  CHECK_THROWS_AS(radialize(odd), EvennessError);
}

TEST_CASE("radialize") {
  SampledFunction g = [](std::span<const double> r) -> cplx { return std::exp(-r[0] * r[0] / 2) * (1 + r[0] * r[0]); };
  const auto gt = radialize(g);
  for (double x : {0.1, 1.0, 2.5})
    for (double y : {-1.0, 0.0, 0.7}) {
      const double s = x * x + y * y;
      CHECK(std::abs(at2(gt, x, y) - std::exp(-s / 2) * (1 + s)) <= 1e-15);
    }
  for (double x : probe_radii()) CHECK(std::abs(at2(gt, x, 0.0) - at1(g, x)) == 0.0);
  CHECK(radiality_defect(gt) <= 1e-12);

  SampledFunction aniso = [](std::span<const double> x) -> cplx { return std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1]); };
  CHECK(radiality_defect(aniso) > 1e-3);
}

TEST_CASE("bridge_laguerre_to_hermite: entries") {
  const auto b0 = bridge_laguerre_to_hermite(CoefficientField::delta({1}, std::vector<int>{0}));
  CHECK(b0.shape() == std::vector<int>{1, 1});
  CHECK(b0.basis() == Basis::hermite);
  CHECK(b0[0].real() == doctest::Approx(std::sqrt(kPi)));

  const auto b1 = bridge_laguerre_to_hermite(CoefficientField::delta({2}, std::vector<int>{1}));
  CHECK(b1.shape() == std::vector<int>{3, 3});
  CHECK(b1.at({0, 2}).real() == doctest::Approx(-std::sqrt(2 * kPi) / 2));
  CHECK(b1.at({2, 0}).real() == doctest::Approx(-std::sqrt(2 * kPi) / 2));
  CHECK(b1.at({1, 1}) == cplx(0.0));
  CHECK(b1.at({0, 0}) == cplx(0.0));
}

TEST_CASE("bridge: Hermite synthesis equals Laguerre synthesis at x1^2 + x2^2") {
  CoefficientField a({12});
  for (int n = 0; n < 12; ++n) a[n] = std::pow(0.5, n);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1, 1);
  CoefficientField r({12});
  for (auto& v : r.data()) v = cplx(u(rng), u(rng));
  for (const auto* field : {&a, &r}) {
    const auto b = bridge_laguerre_to_hermite(*field);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        const double x1 = -3.0 + 6.0 * i / 9, x2 = -3.0 + 6.0 * j / 9;
        const cplx lhs = hermite_synthesize(b, std::vector<double>{x1, x2});
        const cplx rhs = laguerre_synthesize(*field, std::vector<double>{x1 * x1 + x2 * x2});
        CHECK(std::abs(lhs - rhs) <= 1e-8);
      }
  }
}

TEST_CASE("bridge: Hermite analysis of a radial function matches the bridged Laguerre analysis") {
  SampledFunction g = [](std::span<const double> r) -> cplx {
    const double s = r[0] * r[0];
    return std::exp(-s / 2) * (1 - s + 0.2 * s * s);
  };
  const auto a = laguerre_analyze(sqrt_substitution(g), {6});
  const auto b = hermite_analyze(radialize(g), {11, 11});
  const auto bb = bridge_laguerre_to_hermite(a);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(b[i] - bb[i]) <= 1e-11);
  const auto back = bridge_hermite_to_laguerre(b);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(back[n] - a[n]) <= 1e-10);
}

TEST_CASE("bridge_hermite_to_laguerre: inverse and radiality errors") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  CoefficientField a({15});
  for (auto& v : a.data()) v = cplx(u(rng), u(rng));
  const auto back = bridge_hermite_to_laguerre(bridge_laguerre_to_hermite(a));
  for (int n = 0; n < 15; ++n) CHECK(std::abs(back[n] - a[n]) <= 1e-12);

  const auto odd = CoefficientField::delta({3, 3}, std::vector<int>{1, 0}, Basis::hermite);
  CHECK_THROWS_AS(bridge_hermite_to_laguerre(odd), NotRadialError);
  try {
    bridge_hermite_to_laguerre(odd);
  } catch (const NotRadialError& e) {
    CHECK(e.n == 1);
    CHECK(e.k == 0);
    CHECK(e.deviation == 1.0);
  }

  const auto d0 = bridge_hermite_to_laguerre(CoefficientField::delta({1, 1}, std::vector<int>{0, 0}, Basis::hermite));
  CHECK(d0.shape() == std::vector<int>{1});
  CHECK(d0[0].real() == doctest::Approx(1.0 / std::sqrt(kPi)));

  // block with inconsistent ratios: only one side of the n = 1 block
  const auto lopsided = CoefficientField::delta({3, 3}, std::vector<int>{2, 0}, Basis::hermite);
  try {
    bridge_hermite_to_laguerre(lopsided);
    CHECK(false);
  } catch (const NotRadialError& e) {
    CHECK(e.n == 1);
    CHECK(e.deviation > 0.1);
  }
  CHECK_THROWS_AS(bridge_hermite_to_laguerre(CoefficientField({3, 3})), DomainError);
}

TEST_CASE("bridge transports decay rates") {
  for (double alpha : {1.0, 2.0})
    for (double h : {0.3, 1.0}) {
      CoefficientField a({40});
      for (int n = 0; n < 40; ++n) a[n] = std::exp(-h * std::pow(double(n), 1.0 / alpha));
      const double h0 = fit_growth(a, alpha).h;
      const auto b = bridge_laguerre_to_hermite(a);
      const double h1 = fit_growth(b, alpha).h;
      CHECK(h1 >= h0 / std::pow(2.0, 1.0 / alpha) - 1e-3);
    }
}

TEST_CASE("spherical_average") {
  SampledFunction rad = [](std::span<const double> x) -> cplx {
    const double s = x[0] * x[0] + x[1] * x[1];
    return std::exp(-s) * cplx(1, s);
  };
  SampledFunction x1 = [](std::span<const double> x) -> cplx { return x[0]; };
  SampledFunction mix = [](std::span<const double> x) -> cplx {
    return std::exp(-x[0] * x[0] - 0.3 * x[1] * x[1]) + x[0] * x[1] * x[1] + std::cos(x[0] - 2 * x[1]);
  };
  const auto Prad = spherical_average(rad, 16);
  const auto Px1 = spherical_average(x1, 8);
  const auto Pmix = spherical_average(mix, 32);
  const auto PPmix = spherical_average(Pmix, 32);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 50; ++i) {
    const double p[2] = {u(rng), u(rng)};
    CHECK(std::abs(Prad(p) - rad(p)) <= 1e-12);
    CHECK(std::abs(Px1(p)) <= 1e-12);
    CHECK(std::abs(PPmix(p) - Pmix(p)) <= 1e-12);
  }
  // averaged functions are radial up to the angular resolution
  CHECK(radiality_defect(spherical_average(mix, 256)) <= 1e-6);

  // restriction to a ray followed by radialize is the identity on radial input
  SampledFunction ray = [&](std::span<const double> r) -> cplx {
    const double p[2] = {std::abs(r[0]), 0.0};
    return Prad(p);
  };
  const auto again = radialize(ray);
  for (int i = 0; i < 20; ++i) {
    const double p[2] = {u(rng), u(rng)};
    CHECK(std::abs(again(p) - Prad(p)) <= 1e-10);
  }
  CHECK_THROWS_AS(spherical_average(rad, 7), DomainError);
}
