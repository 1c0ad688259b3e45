#pragma once

#include <cmath>
#include <vector>

#include "unisign/errors.hpp"
#include "unisign/hermitian_eig.hpp"
#include "unisign/matrix.hpp"
#include "unisign/qr.hpp"
#include "unisign/rng.hpp"

namespace unisign {

// Largest singular value by power iteration on A*A, relative tolerance 1e-6.
// Deterministic: the start vector comes from a fixed-seed stream.
inline double two_norm(const ComplexMatrix& a) {
  a.require_finite("two_norm");
  const std::size_t mr = a.rows(), mc = a.cols();
  if (mr == 0 || mc == 0) return 0.0;
  CounterRng rng(0x2f0c7a9d11e0b1a7ull);
  std::vector<cplx> v(mc), w(mr);
  for (cplx& z : v) z = rng.next_complex_normal();
  double nv = 0.0;
  for (const cplx& z : v) nv += std::norm(z);
  nv = std::sqrt(nv);
  for (cplx& z : v) z /= nv;
  double sigma = 0.0;
  for (int it = 0; it < 100; ++it) {
    for (std::size_t i = 0; i < mr; ++i) {
      cplx s = 0.0;
      const cplx* ai = a.row(i);
      for (std::size_t j = 0; j < mc; ++j) s += ai[j] * v[j];
      w[i] = s;
    }
    double nw = 0.0;
    for (const cplx& z : w) nw += std::norm(z);
    nw = std::sqrt(nw);
    if (nw == 0.0) return 0.0;
    for (std::size_t j = 0; j < mc; ++j) v[j] = 0.0;
    for (std::size_t i = 0; i < mr; ++i) {
      const cplx wi = std::conj(w[i]);
      const cplx* ai = a.row(i);
      for (std::size_t j = 0; j < mc; ++j) v[j] += std::conj(wi * ai[j]);
    }
    double nv2 = 0.0;
    for (const cplx& z : v) nv2 += std::norm(z);
    nv2 = std::sqrt(nv2);
    if (nv2 == 0.0) return nw;
    const double est = nv2 / nw;  // ||A* w|| / ||w|| with w = A v
    for (cplx& z : v) z /= nv2;
    if (it > 0 && std::abs(est - sigma) <= 1e-6 * est) return est;
    sigma = est;
  }
  return sigma;
}

// Inverse by LU with partial pivoting.
inline ComplexMatrix inverse(const ComplexMatrix& a) {
  a.require_finite("inverse");
  const std::size_t m = a.rows();
  ComplexMatrix lu = a;
  ComplexMatrix inv = ComplexMatrix::identity(m);
  std::vector<std::size_t> piv(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < m; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (std::abs(lu(p, k)) == 0.0)
      throw singular_matrix_error("inverse: exactly singular matrix");
    piv[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < m; ++j) std::swap(lu(k, j), lu(p, j));
    const cplx pivot = lu(k, k);
    for (std::size_t i = k + 1; i < m; ++i) {
      const cplx l = lu(i, k) / pivot;
      lu(i, k) = l;
      cplx* li = lu.row(i);
      const cplx* lk = lu.row(k);
      for (std::size_t j = k + 1; j < m; ++j) li[j] -= l * lk[j];
    }
  }
  // Solve LU X = P I column-block-wise; the identity is permuted in place.
  for (std::size_t k = 0; k < m; ++k)
    if (piv[k] != k)
      for (std::size_t j = 0; j < m; ++j) std::swap(inv(k, j), inv(piv[k], j));
  for (std::size_t i = 1; i < m; ++i) {  // forward substitution
    const cplx* li = lu.row(i);
    cplx* xi = inv.row(i);
    for (std::size_t k = 0; k < i; ++k) {
      const cplx l = li[k];
      if (l == cplx(0.0)) continue;
      const cplx* xk = inv.row(k);
      for (std::size_t j = 0; j < m; ++j) xi[j] -= l * xk[j];
    }
  }
  for (std::size_t i1 = m; i1 > 0; --i1) {  // back substitution
    const std::size_t i = i1 - 1;
    const cplx* ui = lu.row(i);
    cplx* xi = inv.row(i);
    for (std::size_t k = i + 1; k < m; ++k) {
      const cplx uik = ui[k];
      if (uik == cplx(0.0)) continue;
      const cplx* xk = inv.row(k);
      for (std::size_t j = 0; j < m; ++j) xi[j] -= uik * xk[j];
    }
    const cplx dinv = 1.0 / ui[i];
    for (std::size_t j = 0; j < m; ++j) xi[j] *= dinv;
  }
  return inv;
}

// Haar-distributed unitary: QR of a standard complex Gaussian matrix. The
// nonnegative-real-diagonal convention on R makes the distribution exactly
// Haar rather than Haar-up-to-phases.
inline ComplexMatrix haar_unitary(std::size_t m, std::uint64_t seed) {
  if (m < 1) throw domain_error("haar_unitary: empty dimension");
  CounterRng rng(seed);
  ComplexMatrix g(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(i, j) = rng.next_complex_normal();
  return qr(g).q;
}

}  // namespace unisign
