#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "unisign/errors.hpp"
#include "unisign/matrix.hpp"

namespace unisign {

struct HermitianEig {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns; B V = V diag(values)
};

namespace detail {

// Unitary reduction of a Hermitian matrix to real symmetric tridiagonal form
// (Householder similarity, then a diagonal phase gauge on the subdiagonal).
// If u is non-null the accumulated transformation is multiplied into it.
inline void tridiagonalize(ComplexMatrix& a, ComplexMatrix* u,
                           std::vector<double>& d, std::vector<double>& e) {
  const std::size_t m = a.rows();
  d.assign(m, 0.0);
  e.assign(m > 0 ? m - 1 : 0, 0.0);
  std::vector<cplx> v(m), w(m);
  for (std::size_t k = 0; k + 2 < m; ++k) {
    double normx2 = 0.0;
    for (std::size_t i = k + 1; i < m; ++i) normx2 += std::norm(a(i, k));
    const double normx = std::sqrt(normx2);
    if (normx == 0.0) continue;
    const cplx x0 = a(k + 1, k);
    const cplx phase = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
    const cplx alpha = -phase * normx;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < m; ++i) {
      v[i] = a(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;
    // Hermitian rank-2 update of the trailing block:
    // A <- A - tau(v w* + w v*), w = Av - (tau/2)(v*Av) v.
    cplx vav = 0.0;
    for (std::size_t i = k + 1; i < m; ++i) {
      cplx s = 0.0;
      const cplx* ai = a.row(i);
      for (std::size_t j = k + 1; j < m; ++j) s += ai[j] * v[j];
      w[i] = s;
      vav += std::conj(v[i]) * s;
    }
    const double c = 0.5 * tau * vav.real();
    for (std::size_t i = k + 1; i < m; ++i) w[i] -= c * v[i];
    for (std::size_t i = k + 1; i < m; ++i) {
      const cplx tvi = tau * v[i];
      const cplx twi = tau * w[i];
      cplx* ai = a.row(i);
      for (std::size_t j = k + 1; j < m; ++j)
        ai[j] -= tvi * std::conj(w[j]) + twi * std::conj(v[j]);
    }
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t i = k + 2; i < m; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }
    if (u) {
      for (std::size_t i = 0; i < m; ++i) {
        cplx s = 0.0;
        const cplx* ui = u->row(i);
        for (std::size_t j = k + 1; j < m; ++j) s += ui[j] * v[j];
        s *= tau;
        cplx* ui2 = u->row(i);
        for (std::size_t j = k + 1; j < m; ++j) ui2[j] -= s * std::conj(v[j]);
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) d[i] = a(i, i).real();
  // Phase gauge: rotate the subdiagonal onto the nonnegative real axis.
  cplx ph = 1.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const cplx ei = a(i + 1, i);
    const double aei = std::abs(ei);
    e[i] = aei;
    if (aei > 0.0) ph *= ei / aei;
    if (u)
      for (std::size_t r = 0; r < m; ++r) (*u)(r, i + 1) *= ph;
  }
}

// Implicit-shift QL on a real symmetric tridiagonal, rotations accumulated
// into the (complex) columns of v when non-null. Derived from the Algol
// tql2 procedure via its EISPACK/JAMA descendants.
inline void tql2(std::vector<double>& d, std::vector<double>& e,
                 ComplexMatrix* v) {
  const std::size_t n = d.size();
  if (n == 0) return;
  // e[i] couples d[i] and d[i+1]; pad the trailing entry.
  e.resize(n);
  e[n - 1] = 0.0;
  const double eps = 0x1.0p-52;
  double f = 0.0, tst1 = 0.0;
  long budget = 50 * static_cast<long>(n) + 100;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t mm = l;
    while (mm < n && std::abs(e[mm]) > eps * tst1) ++mm;
    if (mm > l) {
      int iter = 0;
      do {
        if (++iter > 60 || --budget < 0)
          throw convergence_error("hermitian_eig: QL sweep budget exhausted");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;
        p = d[mm];
        double c = 1.0, c2 = c, c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t i1 = mm; i1 > l; --i1) {
          const std::size_t i = i1 - 1;
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (v) {
            for (std::size_t k = 0; k < v->rows(); ++k) {
              cplx* vk = v->row(k);
              const cplx t = vk[i + 1];
              vk[i + 1] = s * vk[i] + c * t;
              vk[i] = c * vk[i] - s * t;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix (the input is symmetrized
// internally, so anything within roundoff of Hermitian is accepted).
inline HermitianEig hermitian_eig(const ComplexMatrix& b) {
  b.require_finite("hermitian_eig");
  const std::size_t m = b.rows();
  ComplexMatrix a = hermitian_part(b);
  ComplexMatrix u = ComplexMatrix::identity(m);
  std::vector<double> d, e;
  detail::tridiagonalize(a, &u, d, e);
  detail::tql2(d, e, &u);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
  HermitianEig out{std::vector<double>(m), ComplexMatrix(m, m)};
  for (std::size_t j = 0; j < m; ++j) {
    out.values[j] = d[order[j]];
    for (std::size_t i = 0; i < m; ++i) out.vectors(i, j) = u(i, order[j]);
  }
  return out;
}

// Eigenvalues only (ascending); skips all transform accumulation.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& b) {
  b.require_finite("hermitian_eigenvalues");
  ComplexMatrix a = hermitian_part(b);
  std::vector<double> d, e;
  detail::tridiagonalize(a, nullptr, d, e);
  detail::tql2(d, e, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace unisign
