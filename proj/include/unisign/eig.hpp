#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "unisign/errors.hpp"
#include "unisign/matrix.hpp"
#include "unisign/sign.hpp"

namespace unisign {

struct UnitaryEigendecomposition {
  ComplexMatrix v;           // eigenvector columns
  std::vector<cplx> lambda;  // diagonal of Lambda, |lambda_j| = 1 for unitary A
};

// phi = pi/2 - median{arg A_jj}: rotating by e^{i phi} centers a nearly
// diagonal spectrum around i, so the sign splits it evenly. Diagonal entries
// with negligible modulus carry no usable argument and are excluded; the
// lower median is taken for even counts.
inline double rotation_phase(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  if (m < 1) throw domain_error("rotation_phase: empty matrix");
  const double floor_mod = 1e-3 * a.frobenius_norm();
  std::vector<double> args;
  args.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    if (std::abs(a(i, i)) >= floor_mod) args.push_back(std::arg(a(i, i)));
  if (args.empty()) return 0.0;
  std::sort(args.begin(), args.end());
  return kHalfPi - args[(args.size() - 1) / 2];
}

struct InvariantSubspaces {
  ComplexMatrix u1, u2;  // orthonormal bases, m x m1 and m x (m - m1)
  std::size_t m1 = 0;
  double residual = 0.0;  // ||U2* A U1||_F at acceptance
};

// Splits C^m into the range of the spectral projector P = (I + S)/2 and its
// orthogonal complement. One pivoted QR of the (almost exact) projector is
// the whole subspace iteration; in rare cases a refinement pass multiplying
// the blocks by P and I - P is needed.
inline InvariantSubspaces invariant_subspaces(const ComplexMatrix& p,
                                              const ComplexMatrix& a) {
  const std::size_t m = p.rows();
  double tr = 0.0;
  for (std::size_t i = 0; i < m; ++i) tr += p(i, i).real();
  const std::size_t m1 =
      static_cast<std::size_t>(std::lround(std::min(
          std::max(tr, 0.0), static_cast<double>(m))));
  const double accept =
      100.0 * static_cast<double>(m) * kUnitRoundoff * a.frobenius_norm();
  ComplexMatrix q = qr_column_pivoted(p).q;
  InvariantSubspaces out;
  out.m1 = m1;
  double residual = 0.0;
  for (int pass = 0; pass < 3; ++pass) {
    out.u1 = q.columns(0, m1);
    out.u2 = q.columns(m1, m - m1);
    residual = (out.u2.adjoint() * (a * out.u1)).frobenius_norm();
    if (residual <= accept) {
      out.residual = residual;
      return out;
    }
    // Refinement: push the blocks through P and I - P, re-orthonormalize.
    ComplexMatrix w1 = p * out.u1;
    ComplexMatrix w2 = out.u2 - p * out.u2;
    ComplexMatrix w(m, m);
    w.set_columns(0, w1);
    w.set_columns(m1, w2);
    q = qr(w).q;
  }
  throw decoupling_error(
      "invariant_subspaces: off-diagonal block residual " +
          std::to_string(residual) + " after refinement",
      residual);
}

namespace detail {

inline constexpr double kGoldenAngle = 2.399963229728653322231555506633;

inline UnitaryEigendecomposition eig_base_2x2(const ComplexMatrix& a) {
  UnitaryEigendecomposition out;
  const cplx tr = a(0, 0) + a(1, 1);
  const cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const cplx disc = std::sqrt(tr * tr - 4.0 * det);
  const cplx l1 = 0.5 * (tr + disc);
  cplx v0 = a(0, 1), v1 = l1 - a(0, 0);
  double nv = std::sqrt(std::norm(v0) + std::norm(v1));
  if (nv < 1e-8) {
    v0 = l1 - a(1, 1);
    v1 = a(1, 0);
    nv = std::sqrt(std::norm(v0) + std::norm(v1));
  }
  if (nv < 1e-8) {  // numerically scalar
    out.v = ComplexMatrix::identity(2);
    out.lambda = {a(0, 0), a(1, 1)};
    return out;
  }
  v0 /= nv;
  v1 /= nv;
  const cplx w0 = -std::conj(v1), w1 = std::conj(v0);
  // Rayleigh quotient for the second eigenvalue; exact for normal A.
  const cplx l2 = std::conj(w0) * (a(0, 0) * w0 + a(0, 1) * w1) +
                  std::conj(w1) * (a(1, 0) * w0 + a(1, 1) * w1);
  out.v = ComplexMatrix(2, 2);
  out.v(0, 0) = v0;
  out.v(1, 0) = v1;
  out.v(0, 1) = w0;
  out.v(1, 1) = w1;
  out.lambda = {l1, l2};
  return out;
}

inline bool near_scalar(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  ComplexMatrix d = a;
  for (std::size_t i = 0; i < m; ++i) d(i, i) -= a(0, 0);
  return d.frobenius_norm() <=
         1e3 * static_cast<double>(m) * kUnitRoundoff;
}

inline UnitaryEigendecomposition eig_cluster_base(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  UnitaryEigendecomposition out;
  out.v = ComplexMatrix::identity(m);
  out.lambda.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.lambda[i] = a(i, i);
  return out;
}

inline UnitaryEigendecomposition divide_and_conquer_impl(
    const ComplexMatrix& a, const IterationConfig& cfg, int depth) {
  const std::size_t m = a.rows();
  if (depth > static_cast<int>(m) + 64)
    throw balance_error("divide_and_conquer: recursion depth exceeded");
  if (m == 1) {
    UnitaryEigendecomposition out;
    out.v = ComplexMatrix::identity(1);
    out.lambda = {a(0, 0)};
    return out;
  }
  if (near_scalar(a)) return eig_cluster_base(a);
  if (m == 2) return eig_base_2x2(a);

  double phi = rotation_phase(a);
  for (int attempt = 0; attempt < 6; ++attempt) {
    ComplexMatrix rotated = std::polar(1.0, phi) * a;
    SignDecomposition sd = sign_via(cfg.variant, rotated, cfg);
    ComplexMatrix p = sd.s;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        p(i, j) = 0.5 * (p(i, j) + (i == j ? 1.0 : 0.0));
    double tr = 0.0;
    for (std::size_t i = 0; i < m; ++i) tr += p(i, i).real();
    const long m1 = std::lround(tr);
    if (m1 <= 0 || m1 >= static_cast<long>(m)) {
      phi += kGoldenAngle;  // degenerate split, re-rotate and retry
      continue;
    }
    const InvariantSubspaces sub = invariant_subspaces(p, a);
    const ComplexMatrix a1 = sub.u1.adjoint() * (a * sub.u1);
    const ComplexMatrix a2 = sub.u2.adjoint() * (a * sub.u2);
    const UnitaryEigendecomposition e1 =
        divide_and_conquer_impl(a1, cfg, depth + 1);
    const UnitaryEigendecomposition e2 =
        divide_and_conquer_impl(a2, cfg, depth + 1);
    UnitaryEigendecomposition out;
    out.v = ComplexMatrix(m, m);
    out.v.set_columns(0, sub.u1 * e1.v);
    out.v.set_columns(sub.m1, sub.u2 * e2.v);
    out.lambda = e1.lambda;
    out.lambda.insert(out.lambda.end(), e2.lambda.begin(), e2.lambda.end());
    return out;
  }
  if (near_scalar(a)) return eig_cluster_base(a);
  throw balance_error(
      "divide_and_conquer: no balanced split after golden-angle retries, m = " +
      std::to_string(m));
}

}  // namespace detail

// Spectral divide-and-conquer for the unitary eigendecomposition. The sign
// backend on the rotated matrix is selected by cfg.variant.
inline UnitaryEigendecomposition divide_and_conquer(
    const ComplexMatrix& a, const IterationConfig& cfg) {
  a.require_finite("divide_and_conquer");
  if (!a.is_square()) throw domain_error("divide_and_conquer: not square");
  return detail::divide_and_conquer_impl(a, cfg, 0);
}

}  // namespace unisign
