#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "unisign/errors.hpp"

namespace unisign {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kHalfPi = 1.570796326794896619231321691639751442;

// Modulus ell and complementary modulus ell' = sqrt(1 - ell^2), kept as a
// pair so that neither has to be recovered from the other by a cancelling
// subtraction when one of them is tiny.
struct ModulusPair {
  double ell;
  double ell_comp;
};

// ell = cos(theta), ell' = sin(theta). For theta within 2^-26 of pi/2 the
// modulus is formed as sin(pi/2 - theta) on the gap, which preserves relative
// accuracy where cos(theta) would not.
inline ModulusPair modulus_from_theta(double theta) {
  if (!(theta >= 0.0 && theta <= kHalfPi))
    throw domain_error("modulus_from_theta: theta outside [0, pi/2]");
  const double gap = kHalfPi - theta;
  if (gap < 0x1.0p-26) return {std::sin(gap), std::cos(gap)};
  return {std::cos(theta), std::sin(theta)};
}

// Same pair, constructed from the gap g = pi/2 - theta. Preferred whenever
// the caller knows the gap directly.
inline ModulusPair modulus_from_gap(double gap) {
  if (!(gap >= 0.0 && gap <= kHalfPi))
    throw domain_error("modulus_from_gap: gap outside [0, pi/2]");
  return {std::sin(gap), std::cos(gap)};
}

// Arithmetic-geometric mean of (a, b), a >= 0, b >= 0.
inline double agm(double a, double b) {
  if (b > a) std::swap(a, b);
  if (b == 0.0) return 0.0;
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    if (a - b <= 4.0 * std::numeric_limits<double>::epsilon() * a) break;
    a = an;
    b = bn;
  }
  return 0.5 * (a + b);
}

// K for the modulus whose *complementary* modulus is ell_comp:
// K = pi / (2 AGM(1, ell')). Supplying ell' directly as the AGM seed avoids
// the 1 - ell^2 cancellation when the modulus is close to 1.
inline double complete_K_comp(double ell_comp) {
  if (!(ell_comp >= 0.0)) throw domain_error("complete_K_comp: negative seed");
  if (ell_comp == 0.0)
    throw domain_error("complete_K: divergent, modulus equals 1");
  return kPi / (2.0 * agm(1.0, ell_comp));
}

// Complete elliptic integral of the first kind, K(ell).
inline double complete_K(double ell) {
  if (ell < 0.0) throw domain_error("complete_K: negative modulus");
  if (ell >= 1.0) throw domain_error("complete_K: divergent at modulus >= 1");
  return complete_K_comp(std::sqrt((1.0 - ell) * (1.0 + ell)));
}

struct JacobiScd {
  double sn, cn, dn;
};

// Jacobi sn, cn, dn by Bulirsch's descending-Landen recursion. Takes the
// modulus together with its complement; the recursion is seeded with the
// complementary parameter mc = comp^2 so no 1 - modulus^2 is ever formed.
inline JacobiScd jacobi_scd(double u, double modulus, double comp) {
  if (!(modulus >= 0.0 && modulus <= 1.0))
    throw domain_error("jacobi_scd: modulus outside [0,1]");
  double emc = comp * comp;
  if (emc == 0.0) {  // modulus 1: hyperbolic degeneration
    const double c = 1.0 / std::cosh(u);
    return {std::tanh(u), c, c};
  }
  constexpr double kTol = 1.5e-9;  // ~sqrt(0.01 * eps); error is O(tol^2)
  constexpr int kDepth = 16;
  std::array<double, kDepth> em, en;
  double a = 1.0, dn = 1.0, c = 0.0;
  int l = 0;
  for (int i = 0; i < kDepth; ++i) {
    l = i;
    em[i] = a;
    emc = std::sqrt(emc);
    en[i] = emc;
    c = 0.5 * (a + emc);
    if (std::abs(a - emc) <= kTol * a) break;
    emc *= a;
    a = c;
  }
  u *= c;
  double sn = std::sin(u), cn = std::cos(u);
  if (sn != 0.0) {
    a = cn / sn;
    c *= a;
    for (int i = l; i >= 0; --i) {
      const double b = em[i];
      a *= c;
      c *= dn;
      dn = (en[i] + a) / (b + a);
      a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    sn = sn >= 0.0 ? a : -a;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

inline JacobiScd jacobi_scd(double u, double ell) {
  if (!(ell >= 0.0 && ell <= 1.0))
    throw domain_error("jacobi_scd: modulus outside [0,1]");
  return jacobi_scd(u, ell, std::sqrt((1.0 - ell) * (1.0 + ell)));
}

// log of rho = exp(pi K(ell) / (2 K(ell'))) for ell = cos(theta). Both K
// values are taken through the complementary-seed entry point:
// K(ell) = pi/(2 AGM(1, ell')) and K(ell') = pi/(2 AGM(1, ell)).
inline double log_rho(const ModulusPair& mp) {
  if (mp.ell == 0.0) return 0.0;                 // theta = pi/2 degeneracy
  if (mp.ell_comp == 0.0)                        // theta = 0: rho = infinity
    return std::numeric_limits<double>::infinity();
  return kHalfPi * agm(1.0, mp.ell) / agm(1.0, mp.ell_comp);
}

// rho(theta) from the error bound 4 rho^-(2n+1). rho(0) is the infinity
// sentinel by convention; theta = pi/2 gives the degenerate value 1.
inline double rho(double theta) {
  if (!(theta >= 0.0 && theta <= kHalfPi))
    throw domain_error("rho: theta outside [0, pi/2]");
  return std::exp(log_rho(modulus_from_theta(theta)));
}

}  // namespace unisign
