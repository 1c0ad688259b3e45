#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "unisign/gallery.hpp"
#include "unisign/sign.hpp"

using namespace unisign;

namespace {

ComplexMatrix phase_diagonal(const std::vector<double>& phi) {
  ComplexMatrix a(phi.size(), phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) a(j, j) = std::polar(1.0, phi[j]);
  return a;
}

}  // namespace

TEST_CASE("spectral angle of fixed spectra") {
  CHECK(spectral_angle(phase_diagonal({0.0, kPi})).theta <= 1e-12);
  const ComplexMatrix a = phase_diagonal({kPi / 3, -kPi / 5});
  CHECK(spectral_angle(a).theta == Catch::Approx(kPi / 3).epsilon(1e-12));
}

TEST_CASE("iteration config validation") {
  IterationConfig bad;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(), domain_error);
  bad = IterationConfig{};
  bad.delta = 1e-3;
  CHECK_THROWS_AS(bad.validate(), domain_error);
  bad = IterationConfig{};
  bad.n = 17;
  CHECK_THROWS_AS(bad.validate(), domain_error);
}

TEST_CASE("zolo sign of the identity terminates immediately") {
  const ComplexMatrix I = ComplexMatrix::identity(6);
  const SignDecomposition sd = zolo_sign(I, IterationConfig{});
  CHECK(sd.iterations == 0);
  CHECK((sd.s - I).frobenius_norm() <= 1e-14);
  CHECK((sd.n_factor - I).frobenius_norm() <= 1e-14);
}

TEST_CASE("zolo sign on a diagonal unitary matches the scalar sign") {
  std::vector<double> phi = {0.2,  -0.4, 1.3,  -1.2, 2.9,
                             -2.5, 0.05, -3.0, 1.52, -1.55};
  const ComplexMatrix a = phase_diagonal(phi);
  IterationConfig cfg;
  cfg.n = 2;
  const SignDecomposition sd = zolo_sign(a, cfg);
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double want = std::cos(phi[j]) >= 0.0 ? 1.0 : -1.0;
    CHECK(std::abs(sd.s(j, j) - want) <= 1e-13);
    for (std::size_t i = 0; i < phi.size(); ++i)
      if (i != j) CHECK(std::abs(sd.s(i, j)) <= 1e-13);
  }
  // S is exactly Hermitian after the final symmetrization.
  CHECK(skew_defect_frobenius(sd.s) == 0.0);
}

TEST_CASE("scalar-level convergence bound for diagonal input") {
  // The iterate of a diagonal matrix is the scalar recurrence on each
  // eigenvalue; the arc-angle error obeys 4 rho^{-(2n+1)^k}.
  const double theta0 = 1.0;
  const std::vector<double> phi = {theta0, -0.7, kPi - theta0};
  for (int n : {1, 2}) {
    std::vector<std::complex<double>> z;
    std::vector<double> sgn;
    for (double p : phi) {
      z.push_back(std::polar(1.0, p));
      sgn.push_back(std::cos(p) >= 0.0 ? 1.0 : -1.0);
    }
    ArcAngle th = ArcAngle::from_theta(theta0);
    const double lr = log_rho(th.modulus());
    double pw = 1.0;
    for (int k = 1; k <= 3; ++k) {
      const RationalSignApproximant r = coefficients(n, th);
      for (auto& zj : z) zj = evaluate(r, zj);
      th = theta_update(n, th);
      pw *= (2.0 * n + 1.0);
      const double bound = 4.0 * std::exp(-pw * lr);
      for (std::size_t j = 0; j < z.size(); ++j)
        CHECK(std::abs(std::arg(sgn[j] * z[j])) <= bound + 1e-15);
    }
  }
}

TEST_CASE("post-processing map on scalars") {
  // sigma cos(theta) -> sigma(1 - 3 theta^4 / 8) + O(theta^6) under the
  // symmetrize + Newton-Schulz chain.
  for (double theta : {1e-2, 1e-3}) {
    const double y = std::cos(theta);
    const double z = 0.5 * y * (3.0 - y * y);
    CHECK(std::abs(z - (1.0 - 3.0 / 8.0 * std::pow(theta, 4))) <=
          10.0 * std::pow(theta, 6) + 1e-16);
  }
}

TEST_CASE("pade sign basics") {
  const ComplexMatrix I = ComplexMatrix::identity(5);
  CHECK(pade_sign(I, IterationConfig{}).iterations == 0);
  const ComplexMatrix a = orthog_minus2(60);
  IterationConfig cfg;
  cfg.n = 1;
  const int kz = zolo_sign(a, cfg).iterations;
  const int kp = pade_sign(a, cfg).iterations;
  CHECK(kp <= kz + 2);  // spectrum near +-1 keeps the Pade variant close
}

TEST_CASE("newton baseline converges in one step on an involution") {
  const ComplexMatrix a = phase_diagonal({0.0, kPi});
  const SignDecomposition sd = newton_polar_sign(a);
  CHECK(sd.iterations == 1);
  CHECK((sd.s - a).frobenius_norm() <= 1e-14);
}

TEST_CASE("newton baseline is stable on a generic unitary") {
  const ComplexMatrix a = haar_unitary(60, 21);
  const SignDecomposition sd = newton_polar_sign(a);
  CHECK(backward_errors(a, sd.s, sd.n_factor).worst() <= 1e-13);
}

TEST_CASE("newton baseline misbehaves on the DFT spectrum") {
  const ComplexMatrix a = dft_matrix(64);
  bool misbehaved = false;
  try {
    const SignDecomposition sd = newton_polar_sign(a);
    misbehaved = backward_errors(a, sd.s, sd.n_factor).worst() > 1e-2;
  } catch (const error&) {
    misbehaved = true;
  }
  CHECK(misbehaved);
}

TEST_CASE("direct sign resolves signs of the real parts") {
  const double eps = 0.01;
  // Eigenvalues i e^{i eps} and -i e^{i eps}: real parts -sin(eps), sin(eps).
  ComplexMatrix a(2, 2);
  a(0, 0) = cplx(0.0, 1.0) * std::polar(1.0, eps);
  a(1, 1) = cplx(0.0, -1.0) * std::polar(1.0, eps);
  const SignDecomposition sd = direct_sign(a);
  CHECK(std::abs(sd.s(0, 0) - (-1.0)) <= 1e-12);
  CHECK(std::abs(sd.s(1, 1) - 1.0) <= 1e-12);
  CHECK_FALSE(sd.axis_eigenvalue_warning);
}

TEST_CASE("direct sign flags exact +-i eigenvalues") {
  CHECK(direct_sign(cyclic_shift(4)).axis_eigenvalue_warning);
}

TEST_CASE("direct and zolo agree away from the axis") {
  const ComplexMatrix a = haar_unitary(50, 33);
  const SignDecomposition d = direct_sign(a);
  const SignDecomposition z = zolo_sign(a, IterationConfig{});
  CHECK(two_norm(d.s - z.s) <= 1e-12);
}

TEST_CASE("backward errors of exact data vanish") {
  const ComplexMatrix a = phase_diagonal({0.3, -0.6, 2.8});
  ComplexMatrix s(3, 3), n(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    const double sj = std::cos(std::arg(a(j, j))) >= 0 ? 1.0 : -1.0;
    s(j, j) = sj;
    n(j, j) = sj * a(j, j);
  }
  const BackwardErrors be = backward_errors(a, s, n);
  CHECK(be.worst() <= 1e-14);
}

TEST_CASE("backward errors obey the hermitian-S inequalities") {
  // For Hermitian S and N = SA: ||N*N - I|| <= ||S^2 - I|| and
  // ||A - SN|| <= ||S^2 - I||.
  const ComplexMatrix a = phase_diagonal({0.4, -1.0});
  const double d = 1e-6;
  ComplexMatrix s(2, 2);
  s(0, 0) = 1.0 + d;
  s(1, 1) = -1.0;
  const ComplexMatrix n = s * a;
  const BackwardErrors be = backward_errors(a, s, n);
  const double s2 = std::abs((1.0 + d) * (1.0 + d) - 1.0);
  CHECK(be.factorization <= s2 * (1.0 + 1e-5));
  CHECK(be.unitarity <= s2 * (1.0 + 1e-5));
}

TEST_CASE("half-plane metric picks up a left-half-plane eigenvalue") {
  const ComplexMatrix a = ComplexMatrix::identity(2);
  const ComplexMatrix s = ComplexMatrix::identity(2);
  ComplexMatrix n(2, 2);
  n(0, 0) = -0.1;
  n(1, 1) = 1.0;
  CHECK(backward_errors(a, s, n).half_plane ==
        Catch::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("commutator lemma bound holds for a computed decomposition") {
  const ComplexMatrix a = haar_unitary(40, 56);
  const SignDecomposition sd = zolo_sign(a, IterationConfig{});
  const ComplexMatrix& s = sd.s;
  const ComplexMatrix& n = sd.n_factor;
  const double lhs = two_norm(n * s - s * n);
  const double ns = two_norm(s), nn = two_norm(n);
  const double rhs = (two_norm(n * n - a * a) +
                      (1.0 + ns * nn) * two_norm(a - s * n) +
                      nn * nn * two_norm(s * s - ComplexMatrix::identity(40))) *
                     two_norm(inverse(n)) * two_norm(inverse(s));
  CHECK(lhs <= rhs * 1.05 + 1e-15);
}

TEST_CASE("non-convergence carries the angle history") {
  const ComplexMatrix a = dft_matrix(32);
  IterationConfig cfg;
  cfg.max_iter = 2;  // force failure
  try {
    zolo_sign(a, cfg);
    FAIL("expected convergence_error");
  } catch (const convergence_error& e) {
    CHECK(e.theta_history.size() >= 2);
  }
}
