// Test-only oracles, deliberately independent of the library's evaluation
// paths: quadrature where the library uses the AGM, integral inversion where
// the library uses the Landen recursion.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1], by
// Newton iteration on the Legendre polynomial.
inline void gauss_legendre(int n, std::vector<double>& x,
                           std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

// K(ell) by 64-point Gauss-Legendre quadrature of the defining integral.
inline double complete_K_quadrature(double ell) {
  std::vector<double> x, w;
  gauss_legendre(64, x, w);
  const double halfpi = 1.5707963267948966;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double theta = 0.5 * halfpi * (x[i] + 1.0);
    const double st = std::sin(theta);
    s += w[i] / std::sqrt(1.0 - ell * ell * st * st);
  }
  return 0.5 * halfpi * s;
}

// Incomplete integral F(phi, ell) by adaptive Simpson.
inline double incomplete_F(double phi, double ell) {
  const auto f = [ell](double t) {
    const double st = std::sin(t);
    return 1.0 / std::sqrt(1.0 - ell * ell * st * st);
  };
  std::function<double(double, double, double, double, double, int)> simp =
      [&](double a, double b, double fa, double fb, double fm,
          int depth) -> double {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 40 || std::abs(left + right - whole) < 1e-15)
      return left + right + (left + right - whole) / 15.0;
    return simp(a, m, fa, fm, flm, depth + 1) +
           simp(m, b, fm, fb, frm, depth + 1);
  };
  if (phi == 0.0) return 0.0;
  return simp(0.0, phi, f(0.0), f(phi), f(0.5 * phi), 0);
}

// sn, cn, dn by inverting F(phi, ell) = u with bisection refined by Newton.
// Valid for 0 <= u <= K(ell).
inline void jacobi_by_inversion(double u, double ell, double& sn, double& cn,
                                double& dn) {
  const double halfpi = 1.5707963267948966;
  double lo = 0.0, hi = halfpi;
  double phi = 0.5 * halfpi;
  for (int it = 0; it < 200; ++it) {
    const double fu = incomplete_F(phi, ell) - u;
    if (fu > 0)
      hi = phi;
    else
      lo = phi;
    const double st = std::sin(phi);
    const double deriv = 1.0 / std::sqrt(1.0 - ell * ell * st * st);
    double next = phi - fu / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - phi) < 1e-16) {
      phi = next;
      break;
    }
    phi = next;
  }
  sn = std::sin(phi);
  cn = std::cos(phi);
  dn = std::sqrt(1.0 - ell * ell * sn * sn);
}

}  // namespace oracles
