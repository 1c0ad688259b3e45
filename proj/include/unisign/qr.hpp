#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "unisign/errors.hpp"
#include "unisign/matrix.hpp"

namespace unisign {

struct QRFactors {
  ComplexMatrix q, r;
};

namespace detail {

// In-place Householder factorization of the square matrix r, accumulating the
// unitary factor into q (preinitialized to identity). After the sweep the
// diagonal of r is rescaled to be real nonnegative, the phases being absorbed
// into the columns of q. That normalization makes the factorization unique
// (the Cholesky-factor convention), which the two-sided quotient below
// depends on.
inline void householder_qr_inplace(ComplexMatrix& r, ComplexMatrix& q) {
  const std::size_t m = r.rows();
  std::vector<cplx> v(m), w(m);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    double normx2 = 0.0;
    for (std::size_t i = k; i < m; ++i) normx2 += std::norm(r(i, k));
    const double normx = std::sqrt(normx2);
    if (normx == 0.0) continue;
    const cplx x0 = r(k, k);
    const cplx phase = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
    const cplx alpha = -phase * normx;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) {
      v[i] = r(i, k);
      if (i == k) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;
    // r <- (I - tau v v*) r on the trailing block
    for (std::size_t j = k; j < m; ++j) w[j] = 0.0;
    for (std::size_t i = k; i < m; ++i) {
      const cplx vi = std::conj(v[i]);
      const cplx* ri = r.row(i);
      for (std::size_t j = k; j < m; ++j) w[j] += vi * ri[j];
    }
    for (std::size_t i = k; i < m; ++i) {
      const cplx tvi = tau * v[i];
      cplx* ri = r.row(i);
      for (std::size_t j = k; j < m; ++j) ri[j] -= tvi * w[j];
    }
    r(k, k) = alpha;
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
    // q <- q (I - tau v v*)
    for (std::size_t i = 0; i < m; ++i) {
      cplx s = 0.0;
      const cplx* qi = q.row(i);
      for (std::size_t j = k; j < m; ++j) s += qi[j] * v[j];
      s *= tau;
      cplx* qi2 = q.row(i);
      for (std::size_t j = k; j < m; ++j) qi2[j] -= s * std::conj(v[j]);
    }
  }
  // Absorb diagonal phases into q.
  for (std::size_t k = 0; k < m; ++k) {
    const cplx d = r(k, k);
    const double ad = std::abs(d);
    if (ad == 0.0) continue;
    const cplx ph = d / ad;
    const cplx phc = std::conj(ph);
    cplx* rk = r.row(k);
    for (std::size_t j = k; j < m; ++j) rk[j] *= phc;
    r(k, k) = ad;
    for (std::size_t i = 0; i < m; ++i) q(i, k) *= ph;
  }
}

}  // namespace detail

// Householder QR of a square matrix, with real nonnegative diag(R).
inline QRFactors qr(const ComplexMatrix& a) {
  a.require_finite("qr");
  QRFactors f{ComplexMatrix::identity(a.rows()), a};
  detail::householder_qr_inplace(f.r, f.q);
  return f;
}

struct PivotedQRFactors {
  ComplexMatrix q, r;
  std::vector<std::size_t> perm;  // A[:, perm[j]] = (QR)[:, j]
};

// Householder QR with greedy column pivoting (largest remaining column norm
// first). Used to extract a well-conditioned basis from a near-projector.
inline PivotedQRFactors qr_column_pivoted(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  PivotedQRFactors f{ComplexMatrix::identity(m), a,
                     std::vector<std::size_t>(m)};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  std::vector<double> colnorm2(m, 0.0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) colnorm2[j] += std::norm(f.r(i, j));
  ComplexMatrix& r = f.r;
  ComplexMatrix& q = f.q;
  std::vector<cplx> v(m), w(m);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    std::size_t pivot = k;
    for (std::size_t j = k + 1; j < m; ++j)
      if (colnorm2[j] > colnorm2[pivot]) pivot = j;
    if (pivot != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(r(i, k), r(i, pivot));
      std::swap(colnorm2[k], colnorm2[pivot]);
      std::swap(f.perm[k], f.perm[pivot]);
    }
    // Recompute the pivot column norm exactly; the downdates drift.
    double normx2 = 0.0;
    for (std::size_t i = k; i < m; ++i) normx2 += std::norm(r(i, k));
    const double normx = std::sqrt(normx2);
    if (normx == 0.0) continue;
    const cplx x0 = r(k, k);
    const cplx phase = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
    const cplx alpha = -phase * normx;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) {
      v[i] = r(i, k);
      if (i == k) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;
    for (std::size_t j = k; j < m; ++j) w[j] = 0.0;
    for (std::size_t i = k; i < m; ++i) {
      const cplx vi = std::conj(v[i]);
      const cplx* ri = r.row(i);
      for (std::size_t j = k; j < m; ++j) w[j] += vi * ri[j];
    }
    for (std::size_t i = k; i < m; ++i) {
      const cplx tvi = tau * v[i];
      cplx* ri = r.row(i);
      for (std::size_t j = k; j < m; ++j) ri[j] -= tvi * w[j];
    }
    r(k, k) = alpha;
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      cplx s = 0.0;
      const cplx* qi = q.row(i);
      for (std::size_t j = k; j < m; ++j) s += qi[j] * v[j];
      s *= tau;
      cplx* qi2 = q.row(i);
      for (std::size_t j = k; j < m; ++j) qi2[j] -= s * std::conj(v[j]);
    }
    for (std::size_t j = k + 1; j < m; ++j)
      colnorm2[j] = std::max(0.0, colnorm2[j] - std::norm(r(k, j)));
  }
  for (std::size_t k = 0; k < m; ++k) {
    const cplx d = r(k, k);
    const double ad = std::abs(d);
    if (ad == 0.0) continue;
    const cplx ph = d / ad;
    const cplx phc = std::conj(ph);
    cplx* rk = r.row(k);
    for (std::size_t j = k; j < m; ++j) rk[j] *= phc;
    r(k, k) = ad;
    for (std::size_t i = 0; i < m; ++i) q(i, k) *= ph;
  }
  return f;
}

// For unitary X and a > 0, computes V = (X + a X*)(X* + a X)^{-1} as
// Q1 Q2* with Q1 R1 = X + a X* and Q2 R2 = X* + a X. Since B* = X* + a X
// for real a, this is the B B^{-*} = Q1 Q2* quotient of a normal matrix; the
// result is a product of two unitary factors, hence unitary to roundoff
// regardless of how ill-conditioned B is.
inline ComplexMatrix qq_transform(const ComplexMatrix& x, double a) {
  if (!(a > 0.0)) throw domain_error("qq_transform: coefficient not positive");
  const std::size_t m = x.rows();
  ComplexMatrix b = x.adjoint();
  ComplexMatrix bstar = b;  // X* so far
  for (std::size_t i = 0; i < m; ++i) {
    const cplx* xi = x.row(i);
    cplx* bi = b.row(i);
    cplx* si = bstar.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      const cplx xa = xi[j];
      const cplx xs = bi[j];
      bi[j] = xa + a * xs;   // B   = X + a X*
      si[j] = xs + a * xa;   // B*  = X* + a X
    }
  }
  const double bnorm = b.frobenius_norm();
  QRFactors f1 = qr(b);
  QRFactors f2 = qr(bstar);
  double mindiag = f1.r(0, 0).real();
  for (std::size_t i = 1; i < m; ++i)
    mindiag = std::min(mindiag, f1.r(i, i).real());
  const double u = 0x1.0p-53;
  if (mindiag < static_cast<double>(m) * u * bnorm)
    throw singular_matrix_error(
        "qq_transform: X + aX* numerically singular at a = " +
        std::to_string(a));
  return f1.q * f2.q.adjoint();
}

}  // namespace unisign
