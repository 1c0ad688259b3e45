#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "unisign/approx.hpp"
#include "unisign/rng.hpp"

using namespace unisign;
using std::complex;

TEST_CASE("empty coefficient list gives the identity approximant") {
  const RationalSignApproximant r = coefficients(0, ArcAngle::from_theta(0.7));
  CHECK(r.coeffs.empty());
  const complex<double> z = std::polar(1.0, 0.3);
  CHECK(std::abs(evaluate(r, z) - z) == 0.0);
}

TEST_CASE("pade limit coefficients") {
  const RationalSignApproximant r = coefficients(1, ArcAngle::from_theta(0.0));
  REQUIRE(r.coeffs.size() == 1);
  CHECK(r.coeffs[0] == Catch::Approx(3.0).epsilon(1e-14));
  // r_3(z; 0) = z (z^2 + 3) / (1 + 3 z^2)
  const complex<double> z = std::polar(1.0, 0.9);
  const complex<double> want = z * (z * z + 3.0) / (1.0 + 3.0 * z * z);
  CHECK(std::abs(evaluate(r, z) - want) <= 1e-15);
}

TEST_CASE("coefficients at n=2, theta=pi/4 against the quadrature oracle") {
  // Frozen from a 256-bit evaluation of the closed form.
  const double a1_expect = 0.5846832574873246583;
  const double a2_expect = 7.2450646110584470875;
  const RationalSignApproximant r =
      coefficients(2, ArcAngle::from_theta(kPi / 4));
  REQUIRE(r.coeffs.size() == 2);
  CHECK(r.coeffs[0] == Catch::Approx(a1_expect).epsilon(1e-12));
  CHECK(r.coeffs[1] == Catch::Approx(a2_expect).epsilon(1e-12));
  // Independent route: quadrature K and integral-inversion Jacobi values.
  const double ell = std::sqrt(0.5), ellp = std::sqrt(0.5);
  const double Kp = oracles::complete_K_quadrature(ellp);
  for (int j = 1; j <= 2; ++j) {
    double sn, cn, dn;
    oracles::jacobi_by_inversion((2.0 * j - 1.0) / 5.0 * Kp, ellp, sn, cn, dn);
    const double base = (ell * sn + dn) / cn;
    const double aj = (j == 2) ? base * base : 1.0 / (base * base);
    CHECK(r.coeffs[j - 1] == Catch::Approx(aj).epsilon(1e-9));
  }
}

TEST_CASE("evaluate fixes 1 and +-i up to parity") {
  for (int n : {1, 2, 5}) {
    for (double theta : {0.0, 0.4, 1.2}) {
      const RationalSignApproximant r =
          coefficients(n, ArcAngle::from_theta(theta));
      CHECK(std::abs(evaluate(r, {1.0, 0.0}) - 1.0) <= 1e-13);
      const complex<double> ati = evaluate(r, {0.0, 1.0});
      const complex<double> want =
          (n % 2 == 0) ? complex<double>(0.0, 1.0) : complex<double>(0.0, -1.0);
      CHECK(std::abs(ati - want) <= 1e-13);
    }
  }
}

TEST_CASE("pade evaluation equals the tanh closed form") {
  const RationalSignApproximant r = coefficients(1, ArcAngle::from_theta(0.0));
  const complex<double> z = std::polar(1.0, kPi / 6);
  const complex<double> oracle = std::tanh(3.0 * std::atanh(z));
  CHECK(std::abs(evaluate(r, z) - oracle) <= 1e-13);
}

TEST_CASE("pole reporting carries the factor index") {
  RationalSignApproximant r{1, ArcAngle::from_theta(0.0), {1.0}};
  try {
    evaluate(r, {0.0, 1.0});  // 1 + 1 * i^2 = 0
    FAIL("expected pole_error");
  } catch (const pole_error& e) {
    CHECK(e.factor == 1);
  }
}

TEST_CASE("theta update values") {
  // r fixes 1, so the angle collapses as theta -> 0+.
  CHECK(theta_update(1, ArcAngle::from_theta(1e-8)).theta <= 1e-8);
  // Frozen from 256-bit evaluations.
  CHECK(theta_update(1, ArcAngle::from_theta(kPi / 4)).theta ==
        Catch::Approx(0.035929297979968159748).epsilon(1e-12));
  CHECK(theta_update(2, ArcAngle::from_theta(kPi / 4)).theta ==
        Catch::Approx(0.001552812503691675479).epsilon(1e-12));
  for (int n : {1, 2, 4}) {
    const ArcAngle t = ArcAngle::from_theta(1.1);
    const double bound =
        4.0 * std::exp(-(2.0 * n + 1.0) * log_rho(t.modulus()));
    CHECK(theta_update(n, t).theta <= bound);
  }
}

TEST_CASE("max arc error") {
  CHECK(max_arc_error(0, ArcAngle::from_theta(kPi / 4), 101) ==
        Catch::Approx(kPi / 4).epsilon(1e-13));
  const ArcAngle t3 = ArcAngle::from_theta(kPi / 3);
  CHECK(max_arc_error(1, t3, 2001) <=
        4.0 * std::exp(-3.0 * log_rho(t3.modulus())));
  // Equioscillation attains the max at the arc endpoint.
  const ArcAngle t4 = ArcAngle::from_theta(kPi / 4);
  CHECK(std::abs(max_arc_error(2, t4, 4001) - theta_update(2, t4).theta) <=
        1e-12);
  CHECK_THROWS_AS(max_arc_error(1, t4, 1), domain_error);
}

TEST_CASE("real-part companion") {
  CHECK(r_hat_real(1.0, 2, 0.6) == Catch::Approx(1.0).margin(1e-13));
  CHECK(std::abs(r_hat_real(0.0, 1, 0.6)) <= 1e-13);
  CHECK(std::abs(r_hat_real(0.0, 2, 0.6)) <= 1e-13);
  for (int n : {1, 2}) {
    const ArcAngle t = ArcAngle::from_theta(kPi / 4);
    const double ell = t.modulus().ell;
    CHECK(r_hat_real(ell, n, ell) ==
          Catch::Approx(std::cos(theta_update(n, t).theta)).epsilon(1e-12));
  }
}

TEST_CASE("pade iteration count spot checks") {
  CHECK(pade_table_k(1, ArcAngle::from_theta(kHalfPi - 1e-16), 1e-16) == 37);
  CHECK(pade_table_k(8, ArcAngle::from_theta(kHalfPi - 1e-2), 1e-16) == 3);
  CHECK(pade_table_k(2, ArcAngle::from_theta(kHalfPi - 1e-4), 1e-16) == 8);
}

TEST_CASE("zolo iteration count spot checks") {
  CHECK(zolo_table_k(1, ArcAngle::from_gap(1e-2), 1e-16) == 3);
  CHECK(zolo_table_k(4, ArcAngle::from_gap(1e-8), 1e-16) == 3);
  CHECK(zolo_table_k(8, ArcAngle::from_gap(1e-16), 1e-16) == 2);
}

TEST_CASE("unimodularity and oddness on random triples") {
  CounterRng rng(5);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 8);
    const double theta = (kHalfPi - 1e-6) * rng.next_uniform();
    const RationalSignApproximant r =
        coefficients(n, ArcAngle::from_theta(theta));
    const complex<double> z = std::polar(1.0, 2.0 * kPi * rng.next_uniform());
    CHECK(std::abs(std::abs(evaluate(r, z)) - 1.0) <= 1e-12);
    CHECK(std::abs(evaluate(r, -z) + evaluate(r, z)) <= 1e-13);
  }
}

TEST_CASE("half-sum of r and 1/r depends only on the real part") {
  CounterRng rng(17);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 4);
    const double theta = 0.2 + 1.2 * rng.next_uniform();
    const RationalSignApproximant r =
        coefficients(n, ArcAngle::from_theta(theta));
    const double phi = 0.05 + 1.4 * rng.next_uniform();
    const complex<double> z1 = std::polar(1.0, phi);
    const complex<double> z2 = std::polar(1.0, -phi);  // same real part
    const complex<double> w1 = evaluate(r, z1), w2 = evaluate(r, z2);
    const complex<double> h1 = 0.5 * (w1 + 1.0 / w1);
    const complex<double> h2 = 0.5 * (w2 + 1.0 / w2);
    CHECK(std::abs(h1.imag()) <= 1e-12);
    CHECK(std::abs(h1 - h2) <= 1e-12);
  }
}

TEST_CASE("composition collapses two approximants into one") {
  for (int n : {1, 2})
    for (int m : {1, 2}) {
      const ArcAngle t0 = ArcAngle::from_theta(kPi / 3);
      const ArcAngle t1 = theta_update(n, t0);
      const RationalSignApproximant inner = coefficients(n, t0);
      const RationalSignApproximant outer = coefficients(m, t1);
      const RationalSignApproximant whole =
          coefficients(2 * m * n + m + n, t0);
      for (int i = 0; i < 32; ++i) {
        const complex<double> z = std::polar(1.0, kPi / 3 * i / 31.0);
        CHECK(std::abs(evaluate(outer, evaluate(inner, z)) -
                       evaluate(whole, z)) <= 1e-12);
      }
    }
}
