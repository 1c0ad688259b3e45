#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "unisign/approx.hpp"
#include "unisign/errors.hpp"
#include "unisign/linalg.hpp"
#include "unisign/matrix.hpp"

namespace unisign {

// Unit roundoff of IEEE double.
inline constexpr double kUnitRoundoff = 0x1.0p-53;

// Gap below which the iteration falls back to its lowest-order member and
// re-estimates the arc angle spectrally. The classical switch point is
// sqrt(u); widening it to 1e-4 keeps every QR quotient away from the
// near-singular coefficient regime a_j ~ 1, which otherwise contaminates the
// invariant subspaces of inputs with clustered spectra near +-i.
inline constexpr double kLowOrderGap = 1e-4;

enum class SignAlg { zolo, pade, newton, direct };

inline const char* to_string(SignAlg a) {
  switch (a) {
    case SignAlg::zolo: return "zolo";
    case SignAlg::pade: return "pade";
    case SignAlg::newton: return "newton";
    case SignAlg::direct: return "direct";
  }
  return "?";
}

struct IterationConfig {
  int n = 1;
  double delta = 1e-16;
  int max_iter = 60;
  SignAlg variant = SignAlg::zolo;

  void validate() const {
    if (n < 1 || n > 16) throw domain_error("IterationConfig: n outside 1..16");
    if (!(delta > 0.0 && delta <= 1e-4))
      throw domain_error("IterationConfig: delta outside (0, 1e-4]");
    if (max_iter < 1) throw domain_error("IterationConfig: max_iter < 1");
  }
};

struct SignDecomposition {
  ComplexMatrix s;         // Hermitian involutory factor, exactly Hermitian
  ComplexMatrix n_factor;  // unitary factor with right-half-plane spectrum
  int iterations = 0;
  std::vector<ArcAngle> theta_history;
  double max_iterate_unitarity_defect = 0.0;  // over all accepted iterates
  bool axis_eigenvalue_warning = false;       // eigenvalue of A at +-i
};

struct BackwardErrors {
  double factorization;    // ||A - S N||
  double involution;       // ||S^2 - I||
  double hermitian_defect; // ||S - S*||
  double unitarity;        // ||N* N - I||
  double square;           // ||N^2 - A^2||
  double half_plane;       // max{0, -min Re lambda(N)}

  double worst() const {
    return std::max({factorization, involution, hermitian_defect, unitarity,
                     square, half_plane});
  }
};

// Spectral angle of a unitary matrix: the real parts of its eigenvalues are
// the eigenvalues of the Hermitian part, so Theta = arccos min_j |mu_j| with
// mu_j the eigenvalues of (A + A*)/2.
inline ArcAngle spectral_angle(const ComplexMatrix& a) {
  a.require_finite("spectral_angle");
  const std::vector<double> vals = hermitian_eigenvalues(hermitian_part(a));
  double x = 1.0;
  for (double v : vals) x = std::min(x, std::abs(v));
  return ArcAngle::from_cos(std::min(x, 1.0));
}

namespace detail {

inline ComplexMatrix newton_schulz_step(const ComplexMatrix& x) {
  ComplexMatrix g = x.adjoint() * x;
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 3.0;
  return -0.5 * (x * g);
}

inline ComplexMatrix finish_sign(const ComplexMatrix& x) {
  ComplexMatrix s = hermitian_part(x);
  s = newton_schulz_step(s);
  return hermitian_part(s);
}

inline SignDecomposition structure_preserving_sign(const ComplexMatrix& a,
                                                   const IterationConfig& cfg,
                                                   bool pade) {
  cfg.validate();
  a.require_finite("sign iteration");
  const std::size_t m = a.rows();
  SignDecomposition out;
  ArcAngle th = ArcAngle::from_theta(0.0);
  if (!pade) {
    th = spectral_angle(a);
    th = ArcAngle::from_gap(std::max(th.gap, 10.0 * kUnitRoundoff));
  }
  out.theta_history.push_back(th);
  const double term = 2.0 * std::pow(8.0 * cfg.delta / 3.0, 0.25);
  ComplexMatrix x = a;
  out.max_iterate_unitarity_defect = unitarity_defect(x);
  RationalSignApproximant pade_coeffs;
  if (pade) pade_coeffs = coefficients(cfg.n, th);
  int k = 0;
  while (skew_defect_frobenius(x) > term) {
    if (k >= cfg.max_iter) {
      std::vector<double> hist;
      for (const ArcAngle& t : out.theta_history) hist.push_back(t.theta);
      throw convergence_error(
          std::string(pade ? "pade_sign" : "zolo_sign") +
              ": no convergence in " + std::to_string(cfg.max_iter) +
              " iterations",
          std::move(hist));
    }
    const bool near = !pade && th.gap < kLowOrderGap;
    const int n_use = near ? 1 : cfg.n;
    const RationalSignApproximant r =
        pade ? pade_coeffs : coefficients(n_use, th);
    ComplexMatrix y = x, z = x;
    for (int j = 0; j < n_use; ++j) {
      ComplexMatrix v;
      try {
        v = qq_transform(x, r.coeffs[static_cast<std::size_t>(j)]);
      } catch (const singular_matrix_error& e) {
        throw singular_matrix_error(std::string(e.what()) + " at iteration " +
                                    std::to_string(k));
      }
      y = y * v;
      z = v * z;
    }
    x = 0.5 * (y + z);
    // Re-unitarization: exact identity on a unitary iterate, but it stops
    // roundoff-level unitarity loss from being amplified by later quotients.
    x = newton_schulz_step(x);
    if (!pade) {
      if (near) {
        th = spectral_angle(x);
        th = ArcAngle::from_gap(std::max(th.gap, 10.0 * kUnitRoundoff));
      } else {
        th = theta_update(n_use, th);
      }
    }
    out.theta_history.push_back(th);
    out.max_iterate_unitarity_defect =
        std::max(out.max_iterate_unitarity_defect, unitarity_defect(x));
    ++k;
  }
  out.iterations = k;
  out.s = finish_sign(x);
  out.n_factor = out.s * a;
  return out;
}

}  // namespace detail

// Structure-preserving sign iteration of order 2n+1 on the arc set of the
// spectral angle of A.
inline SignDecomposition zolo_sign(const ComplexMatrix& a,
                                   const IterationConfig& cfg) {
  return detail::structure_preserving_sign(a, cfg, /*pade=*/false);
}

// Diagonal Pade variant: the same iteration with the arc angle frozen at 0.
inline SignDecomposition pade_sign(const ComplexMatrix& a,
                                   const IterationConfig& cfg) {
  return detail::structure_preserving_sign(a, cfg, /*pade=*/true);
}

// Scaled Newton baseline: polar factor of (A + A*)/2 with 1,infinity-norm
// scaling, scaling switched off near convergence. Not structure-preserving;
// its failure on spectra near +-i is an expected experimental outcome.
inline SignDecomposition newton_polar_sign(const ComplexMatrix& a) {
  a.require_finite("newton_polar_sign");
  const std::size_t m = a.rows();
  SignDecomposition out;
  ComplexMatrix x = hermitian_part(a);
  bool scaling = true;
  const double tol = 10.0 * kUnitRoundoff * static_cast<double>(m);
  bool converged = false;
  for (int k = 0; k < 60; ++k) {
    ComplexMatrix xinv;
    try {
      xinv = inverse(x);
    } catch (const singular_matrix_error&) {
      throw singular_matrix_error(
          "newton_polar_sign: singular iterate at step " + std::to_string(k));
    }
    double mu = 1.0;
    if (scaling) {
      const double num = xinv.one_norm() * xinv.inf_norm();
      const double den = x.one_norm() * x.inf_norm();
      mu = std::pow(num / den, 0.25);
    }
    ComplexMatrix xn = 0.5 * (mu * x + (1.0 / mu) * xinv);
    const double rel =
        (xn - x).frobenius_norm() / std::max(x.frobenius_norm(), 1e-300);
    x = xn;
    out.iterations = k + 1;
    if (scaling && rel < 1e-2) scaling = false;
    if (rel <= tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw convergence_error("newton_polar_sign: no convergence in 60 steps");
  out.s = detail::finish_sign(x);
  out.n_factor = out.s * a;
  return out;
}

// Direct method through the Hermitian part: for unitary (normal) A the sign
// depends only on the signs of Re lambda, which the spectral projectors of
// (A + A*)/2 resolve. Eigenvalues of A at +-i make the sign arbitrary there;
// the result is flagged, not rejected.
inline SignDecomposition direct_sign(const ComplexMatrix& a) {
  a.require_finite("direct_sign");
  const std::size_t m = a.rows();
  const HermitianEig eig = hermitian_eig(hermitian_part(a));
  SignDecomposition out;
  for (double v : eig.values)
    if (std::abs(v) < 10.0 * kUnitRoundoff) out.axis_eigenvalue_warning = true;
  // V diag(sign(values)) V*
  ComplexMatrix w = eig.vectors;
  for (std::size_t k = 0; k < m; ++k)
    if (eig.values[k] < 0.0)
      for (std::size_t i = 0; i < m; ++i) w(i, k) = -w(i, k);
  ComplexMatrix s = w * eig.vectors.adjoint();
  s = detail::newton_schulz_step(s);
  out.s = hermitian_part(s);
  out.n_factor = out.s * a;
  return out;
}

inline SignDecomposition sign_via(SignAlg alg, const ComplexMatrix& a,
                                  const IterationConfig& cfg) {
  switch (alg) {
    case SignAlg::zolo: return zolo_sign(a, cfg);
    case SignAlg::pade: return pade_sign(a, cfg);
    case SignAlg::newton: return newton_polar_sign(a);
    case SignAlg::direct: return direct_sign(a);
  }
  throw domain_error("sign_via: unknown algorithm");
}

// The six residuals of the sign decomposition; mu(N) is taken through the
// Hermitian part of N, exact for normal N and within the unitarity defect
// otherwise.
inline BackwardErrors backward_errors(const ComplexMatrix& a,
                                      const ComplexMatrix& s,
                                      const ComplexMatrix& n) {
  const std::size_t m = a.rows();
  BackwardErrors e{};
  e.factorization = two_norm(a - s * n);
  ComplexMatrix ss = s * s;
  for (std::size_t i = 0; i < m; ++i) ss(i, i) -= 1.0;
  e.involution = two_norm(ss);
  e.hermitian_defect = two_norm(s - s.adjoint());
  ComplexMatrix nn = n.adjoint() * n;
  for (std::size_t i = 0; i < m; ++i) nn(i, i) -= 1.0;
  e.unitarity = two_norm(nn);
  e.square = two_norm(n * n - a * a);
  const std::vector<double> re = hermitian_eigenvalues(hermitian_part(n));
  e.half_plane = std::max(0.0, re.empty() ? 0.0 : -re.front());
  return e;
}

}  // namespace unisign
