#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "unisign/elliptic.hpp"
#include "unisign/errors.hpp"

namespace unisign {

// Arc half-angle Theta of the circle set on which sign(z) is approximated.
// The gap pi/2 - theta is stored redundantly: for spectra hugging +-i the gap
// is the quantity that carries the information, and recovering it from theta
// alone would lose it to rounding.
struct ArcAngle {
  double theta;
  double gap;

  static ArcAngle from_theta(double theta) {
    if (!(theta >= 0.0 && theta <= kHalfPi))
      throw domain_error("ArcAngle: theta outside [0, pi/2]");
    return {theta, kHalfPi - theta};
  }
  static ArcAngle from_gap(double gap) {
    if (!(gap >= 0.0 && gap <= kHalfPi))
      throw domain_error("ArcAngle: gap outside [0, pi/2]");
    return {kHalfPi - gap, gap};
  }
  // Angle whose cosine is x: theta = acos(x), gap = asin(x), both accurate.
  static ArcAngle from_cos(double x) {
    if (!(x >= 0.0 && x <= 1.0))
      throw domain_error("ArcAngle: cosine outside [0, 1]");
    return {std::acos(x), std::asin(x)};
  }

  ModulusPair modulus() const { return {std::sin(gap), std::sin(theta)}; }

  // e^{i theta}, built from the gap so the real part keeps relative accuracy
  // arbitrarily close to pi/2.
  std::complex<double> unit_point() const {
    return {std::sin(gap), std::cos(gap)};
  }
};

// The odd unimodular rational r_{2n+1}(z; Theta) = z prod (z^2+a_j)/(1+a_j z^2)
// in factored form. Coefficients are positive; for theta = 0 they are the
// diagonal Pade limit a_j = tan^2(j pi / (2n+1)).
struct RationalSignApproximant {
  int n;
  ArcAngle theta;
  std::vector<double> coeffs;
};

inline RationalSignApproximant coefficients(int n, ArcAngle theta) {
  if (n < 0) throw domain_error("coefficients: negative half-degree");
  RationalSignApproximant r{n, theta, {}};
  r.coeffs.reserve(static_cast<std::size_t>(n));
  if (theta.theta == 0.0) {
    for (int j = 1; j <= n; ++j) {
      const double t = std::tan(j * kPi / (2 * n + 1));
      r.coeffs.push_back(t * t);
    }
    return r;
  }
  const ModulusPair mp = theta.modulus();
  const double Kp = complete_K_comp(mp.ell);  // K(ell')
  for (int j = 1; j <= n; ++j) {
    const double v = (2.0 * j - 1.0) / (2.0 * n + 1.0) * Kp;
    const JacobiScd s = jacobi_scd(v, mp.ell_comp, mp.ell);
    if (s.cn == 0.0) throw error("coefficients: cn vanished inside (0, K)");
    const double base = (mp.ell * s.sn + s.dn) / s.cn;
    r.coeffs.push_back(((j + n) % 2 == 0) ? base * base
                                          : 1.0 / (base * base));
  }
  return r;
}

inline std::complex<double> evaluate(const RationalSignApproximant& r,
                                     std::complex<double> z) {
  const std::complex<double> z2 = z * z;
  std::complex<double> w = z;
  for (int j = 0; j < r.n; ++j) {
    const double a = r.coeffs[static_cast<std::size_t>(j)];
    const std::complex<double> den = 1.0 + a * z2;
    if (std::abs(den) == 0.0)
      throw pole_error("evaluate: pole 1 + a_j z^2 = 0", j + 1);
    w *= (z2 + a) / den;
  }
  return w;
}

// Theta_{k+1} = |arg r_{2n+1}(e^{i Theta_k}; Theta_k)|.
inline ArcAngle theta_update(int n, ArcAngle theta) {
  const RationalSignApproximant r = coefficients(n, theta);
  const double t = std::abs(std::arg(evaluate(r, theta.unit_point())));
  return ArcAngle::from_theta(t);
}

// Max of |arg(r(z)/sign z)| over `samples` equispaced points on the arc
// {e^{i phi} : 0 <= phi <= theta}; by oddness and conjugate symmetry of r
// this is the max over the whole arc set.
inline double max_arc_error(int n, ArcAngle theta, int samples) {
  if (samples < 2) throw domain_error("max_arc_error: need >= 2 samples");
  const RationalSignApproximant r = coefficients(n, theta);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double phi = theta.theta * i / (samples - 1);
    const std::complex<double> z =
        (i == samples - 1) ? theta.unit_point() : std::polar(1.0, phi);
    worst = std::max(worst, std::abs(std::arg(evaluate(r, z))));
  }
  return worst;
}

// Re r_{2n+1}(x + i sqrt(1-x^2); arccos ell), which realizes the scaled
// real-interval minimax approximant R_hat_{2n+1}(x; ell) without a minimax
// solver.
inline double r_hat_real(double x, int n, double ell) {
  if (!(x >= -1.0 && x <= 1.0)) throw domain_error("r_hat_real: |x| > 1");
  const ArcAngle theta =
      (ell >= 1.0) ? ArcAngle::from_theta(0.0) : ArcAngle::from_cos(ell);
  const RationalSignApproximant r = coefficients(n, theta);
  const double y = std::sqrt((1.0 - x) * (1.0 + x));
  return evaluate(r, {x, y}).real();
}

// Smallest k with |z_k - 1| <= (8 delta/3)^{1/4} for the scalar Pade
// iteration z <- r_{2n+1}(z; 0) started from z_0 = e^{i theta_0}. The start
// is formed by cos/sin of the rounded theta, which is what the reference
// tabulation does; a gap-exact start shifts the k = 37 and k = 19 cells of
// the tightest column by one.
inline int pade_table_k(int n, ArcAngle theta0, double delta) {
  if (!(delta > 0.0)) throw domain_error("pade_table_k: delta <= 0");
  const double tol = std::pow(8.0 * delta / 3.0, 0.25);
  const RationalSignApproximant r = coefficients(n, ArcAngle::from_theta(0.0));
  std::complex<double> z{std::cos(theta0.theta), std::sin(theta0.theta)};
  for (int k = 0; k <= 200; ++k) {
    if (std::abs(z - 1.0) <= tol) return k;
    z = evaluate(r, z);
  }
  throw convergence_error("pade_table_k: no convergence in 200 iterations");
}

// Smallest k >= 1 with 4 rho(theta_0)^{-(2n+1)^k} <= (8 delta/3)^{1/4},
// evaluated in log space: (2n+1)^k as a bare power overflows long before the
// tight columns of the tabulation are reached.
inline int zolo_table_k(int n, ArcAngle theta0, double delta) {
  if (!(delta > 0.0)) throw domain_error("zolo_table_k: delta <= 0");
  if (!(theta0.theta > 0.0)) throw domain_error("zolo_table_k: theta0 == 0");
  const double tol = std::pow(8.0 * delta / 3.0, 0.25);
  const double lr = log_rho(modulus_from_gap(theta0.gap));
  if (lr == 0.0)
    throw convergence_error("zolo_table_k: rho == 1 at theta = pi/2");
  const double target = std::log(std::log(4.0 / tol) / lr);
  int k = 1;
  while (k * std::log(2.0 * n + 1.0) < target - 1e-13 && k < 1000) ++k;
  return k;
}

}  // namespace unisign
