#pragma once

#include <cmath>

#include "unisign/elliptic.hpp"
#include "unisign/errors.hpp"
#include "unisign/matrix.hpp"

namespace unisign {

// m-point discrete Fourier transform matrix, A_jk = e^{2 pi i jk/m}/sqrt(m)
// (0-based). Unitary to roundoff; the angle is reduced mod m before the
// trig evaluation.
inline ComplexMatrix dft_matrix(std::size_t m) {
  if (m < 1) throw domain_error("dft_matrix: empty dimension");
  ComplexMatrix a(m, m);
  const double s = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t t = (i * j) % m;
      a(i, j) = std::polar(s, 2.0 * kPi * static_cast<double>(t) /
                                  static_cast<double>(m));
    }
  return a;
}

// Cyclic shift permutation: A e_j = e_{j+1 mod m}. Eigenvalues e^{2 pi i j/m};
// for even m the spectrum contains +-i exactly, and the integer entries are
// exact in floating point.
inline ComplexMatrix cyclic_shift(std::size_t m) {
  if (m < 1) throw domain_error("cyclic_shift: empty dimension");
  ComplexMatrix a(m, m);
  for (std::size_t j = 0; j < m; ++j) a((j + 1) % m, j) = 1.0;
  return a;
}

// Raw entries cos((i + 1/2) j pi / m) (0-based row i, column j), then each
// column scaled to unit 2-norm. The columns of the raw matrix are orthogonal
// with norms sqrt(m) (j = 0) and sqrt(m/2) (j > 0), so the result is
// orthogonal to roundoff.
inline ComplexMatrix orthog_minus2(std::size_t m) {
  if (m < 1) throw domain_error("orthog_minus2: empty dimension");
  ComplexMatrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      a(i, j) = std::cos((i + 0.5) * static_cast<double>(j) * kPi /
                         static_cast<double>(m));
  for (std::size_t j = 0; j < m; ++j) {
    double n2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) n2 += std::norm(a(i, j));
    const double s = 1.0 / std::sqrt(n2);
    for (std::size_t i = 0; i < m; ++i) a(i, j) *= s;
  }
  return a;
}

}  // namespace unisign
