#include <doctest.h>

#include <cmath>
#include <random>

#include "lagprop/specfun.hpp"
#include "oracles.hpp"

using namespace lagprop;

TEST_CASE("laguerre_l: closed-form values") {
  CHECK(laguerre_l(0, 0.0)[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(laguerre_l(1, 2.0)[1] == doctest::Approx(-std::exp(-1.0)).epsilon(1e-15));

  // explicit polynomials from the Rodrigues formula, n <= 5
  for (double x : {0.0, 0.3, 1.7, 4.2, 11.0, 25.0}) {
    const auto l = laguerre_l(5, x);
    for (int n = 0; n <= 5; ++n) {
      const double expect = oracle::laguerre_poly_explicit(n, x) * std::exp(-0.5 * x);
      CHECK(l[n] == doctest::Approx(expect).epsilon(1e-12).scale(1e-300));
    }
  }
}

TEST_CASE("laguerre_l: recurrence residual and large arguments") {
  for (double x : {0.01, 1.0, 10.0, 80.0, 300.0}) {
    const auto l = laguerre_l(60, x);
    for (int n = 1; n < 60; ++n) {
      const double res = (n + 1.0) * l[n + 1] - (2.0 * n + 1.0 - x) * l[n] + n * l[n - 1];
      CHECK(std::abs(res) <= 1e-12 * std::max(1.0, std::abs(l[n])) * (2.0 * n + 1.0 + x));
    }
  }
  // no overflow/NaN far out, |l_n| <= 1
  for (double x : {800.0, 1500.0, 2500.0}) {
    const auto l = laguerre_l(512, x);
    for (double v : l) {
      CHECK(std::isfinite(v));
      CHECK(std::abs(v) <= 1.0);
    }
  }
  // at x = 2000 with n = 512, x is inside [0, 4n]: values are far from underflow
  const auto l = laguerre_l(512, 2000.0);
  CHECK(std::abs(l[512]) > 1e-30);
}

TEST_CASE("laguerre_l: eigenrelation E l_n = n l_n by finite differences") {
  // E = -(x d^2 + d - x/4 + 1/2)
  auto apply_e = [](int n, double x, double h) {
    const double fm = laguerre_l(n, x - h)[n], f0 = laguerre_l(n, x)[n], fp = laguerre_l(n, x + h)[n];
    const double d2 = (fp - 2 * f0 + fm) / (h * h);
    const double d1 = (fp - fm) / (2 * h);
    return -(x * d2 + d1 - 0.25 * x * f0 + 0.5 * f0);
  };
  for (int n = 0; n <= 10; ++n) {
    for (double x : {0.7, 2.5, 6.0}) {
      const double target = n * laguerre_l(n, x)[n];
      const double e1 = std::abs(apply_e(n, x, 1e-2) - target);
      const double e2 = std::abs(apply_e(n, x, 5e-3) - target);
      CHECK(e1 < 1e-3 * (1 + n));
      if (e1 > 1e-9) CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));  // O(h^2)
    }
  }
}

TEST_CASE("hermite_h: values at zero and parity") {
  CHECK(hermite_h(0, 0.0)[0] == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-15));
  const auto h = hermite_h(41, 0.0);
  for (int k = 0; k <= 20; ++k) {
    // |h_{2k}(0)| = (2k)! / (2^k k! ((2k)! sqrt(pi))^{1/2})
    const double lg = std::lgamma(2.0 * k + 1.0);
    const double expect = std::exp(lg - k * std::log(2.0) - std::lgamma(k + 1.0) - 0.5 * (lg + 0.5 * std::log(kPi)));
    CHECK(std::abs(h[2 * k]) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(h[2 * k]) <= 1.0);
  }
  for (int n = 1; n <= 41; n += 2) CHECK(h[n] == 0.0);
}

TEST_CASE("hermite_h: explicit functions and no underflow trap") {
  for (double x : {-2.0, -0.5, 0.4, 1.3, 3.0}) {
    const auto h = hermite_h(4, x);
    for (int n = 0; n <= 4; ++n) CHECK(h[n] == doctest::Approx(oracle::hermite_function_explicit(n, x)).epsilon(1e-13));
  }
  const auto far = hermite_h(600, 40.0);  // seed e^{-800} underflows on its own
  CHECK(std::isfinite(far[600]));
  CHECK(far[600] != 0.0);
}

TEST_CASE("bessel_i0: oracle values") {
  CHECK(bessel_i0(0.0) == cplx(1.0, 0.0));
  const cplx i1 = bessel_i0(1.0);
  CHECK(i1.real() == doctest::Approx(1.266065877752008).epsilon(1e-14));
  CHECK(i1.real() == doctest::Approx(oracle::i0_series(1.0).real()).epsilon(1e-15));
  const cplx j2 = bessel_i0(cplx(0.0, 2.0));
  CHECK(j2.real() == doctest::Approx(0.223890779141236).epsilon(1e-13));
  CHECK(std::abs(j2.imag()) < 1e-15);
  CHECK(std::abs(j2 - oracle::i0_series(cplx(0.0, 2.0))) < 1e-15);
}

TEST_CASE("bessel_i0: agrees with std:: special functions on both axes") {
  for (double x = 0.25; x < 600.0; x *= 1.37) {
    const double ref = std::cyl_bessel_i(0.0, x);
    CHECK(bessel_i0(x).real() == doctest::Approx(ref).epsilon(1e-12));
    const cplx j = bessel_i0(cplx(0.0, x));
    CHECK(std::abs(j.real() - std::cyl_bessel_j(0.0, x)) < 1e-12);
  }
}

TEST_CASE("bessel_i0: continuity across the series/asymptotic switch") {
  const double r = kBesselSwitchRadius;
  for (int k = 0; k < 16; ++k) {
    const cplx dir = std::polar(1.0, 2.0 * kPi * k / 16.0);
    const cplx below = bessel_i0(dir * (r * (1 - 1e-12)));
    const cplx above = bessel_i0(dir * (r * (1 + 1e-12)));
    CHECK(std::abs(below - above) <= 1e-9 * std::abs(above));
    // the asymptotic branch against a long-double series oracle
    const cplx ref = oracle::i0_series(dir * (r * 1.2));
    CHECK(std::abs(bessel_i0(dir * (r * 1.2)) - ref) <= 1e-9 * std::abs(ref));
  }
}

TEST_CASE("bessel_i0: conjugate symmetry and overflow") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-60.0, 60.0);
  for (int i = 0; i < 200; ++i) {
    const cplx w(u(rng), u(rng));
    const cplx a = bessel_i0(std::conj(w)), b = std::conj(bessel_i0(w));
    CHECK(std::abs(a - b) <= 1e-15 * std::abs(b));
  }
  CHECK_THROWS_AS(bessel_i0(cplx(800.0, 1.0)), OverflowError);
  CHECK_NOTHROW(bessel_i0(cplx(0.0, 800.0)));
  CHECK(std::isfinite(std::abs(bessel_i0_scaled(cplx(5000.0, 3.0)))));
}

TEST_CASE("gauss_rule: small closed-form rules") {
  auto g1 = gauss_rule(QuadratureKind::laguerre, 1);
  CHECK(g1.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g1.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

  auto g2 = gauss_rule(QuadratureKind::laguerre, 2);
  CHECK(g2.nodes[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
  CHECK(g2.nodes[1] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));

  auto h2 = gauss_rule(QuadratureKind::hermite, 2);
  CHECK(h2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(h2.nodes[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(h2.weights[0] == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-15));
  CHECK(h2.weights[1] == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-15));

  CHECK_THROWS_AS(gauss_rule(QuadratureKind::laguerre, 0), DomainError);
  CHECK_THROWS_AS(gauss_rule(QuadratureKind::hermite, 513), DomainError);
}

TEST_CASE("gauss_rule: monomial exactness up to degree 2q-1, q <= 40") {
  for (int q = 1; q <= 40; ++q) {
    const auto lag = gauss_rule(QuadratureKind::laguerre, q);
    const auto her = gauss_rule(QuadratureKind::hermite, q);
    const auto leg = gauss_rule(QuadratureKind::legendre, q, -0.5, 2.0);
    for (int i = 0; i < q; ++i) {
      CHECK(lag.weights[i] > 0.0);
      CHECK(her.weights[i] > 0.0);
      CHECK(leg.weights[i] > 0.0);
      if (i) {
        CHECK(lag.nodes[i] > lag.nodes[i - 1]);
        CHECK(her.nodes[i] > her.nodes[i - 1]);
        CHECK(leg.nodes[i] > leg.nodes[i - 1]);
      }
    }
    for (int k = 0; k <= 2 * q - 1; ++k) {
      long double s_lag = 0, s_her = 0, s_her_abs = 0, s_leg = 0;
      for (int i = 0; i < q; ++i) {
        s_lag += lag.weights[i] * std::pow(static_cast<long double>(lag.nodes[i]), k);
        const long double hk = her.weights[i] * std::pow(static_cast<long double>(her.nodes[i]), k);
        s_her += hk;
        s_her_abs += std::abs(hk);
        s_leg += leg.weights[i] * std::pow(static_cast<long double>(leg.nodes[i]), k);
      }
      const double lag_exact = std::tgamma(k + 1.0);
      CHECK(static_cast<double>(s_lag) == doctest::Approx(lag_exact).epsilon(1e-12));
      const double her_exact = (k % 2) ? 0.0 : std::tgamma((k + 1) / 2.0);
      CHECK(std::abs(static_cast<double>(s_her) - her_exact) <= 1e-12 * static_cast<double>(s_her_abs));
      const double leg_exact = (std::pow(2.0, k + 1) - std::pow(-0.5, k + 1)) / (k + 1);
      CHECK(static_cast<double>(s_leg) == doctest::Approx(leg_exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("gauss_rule: orthonormality of both families, n_max <= 40") {
  for (int n_max : {5, 20, 40}) {
    const auto lag = gauss_rule(QuadratureKind::laguerre, 4 * n_max);
    const auto her = gauss_rule(QuadratureKind::hermite, 4 * n_max);
    std::vector<std::vector<double>> lv, hv;
    for (double x : lag.nodes) lv.push_back(laguerre_l(n_max, x));
    for (double x : her.nodes) hv.push_back(hermite_h(n_max, x));
    for (int n = 0; n <= n_max; ++n) {
      for (int m = 0; m <= n_max; ++m) {
        double gl = 0, gh = 0;
        for (std::size_t i = 0; i < lag.nodes.size(); ++i) gl += lag.lifted_weights[i] * lv[i][n] * lv[i][m];
        for (std::size_t i = 0; i < her.nodes.size(); ++i) gh += her.lifted_weights[i] * hv[i][n] * hv[i][m];
        CHECK(std::abs(gl - (n == m)) <= 1e-10);
        CHECK(std::abs(gh - (n == m)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("gauss_rule: order 512 stays finite") {
  const auto lag = gauss_rule(QuadratureKind::laguerre, 512);
  const auto her = gauss_rule(QuadratureKind::hermite, 512);
  double sl = 0, sh = 0;
  for (int i = 0; i < 512; ++i) {
    CHECK(std::isfinite(lag.lifted_weights[i]));
    CHECK(std::isfinite(her.lifted_weights[i]));
    sl += lag.weights[i];
    sh += her.weights[i];
  }
  CHECK(sl == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sh == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
}
