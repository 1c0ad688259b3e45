#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "unisign/errors.hpp"

namespace unisign {

using cplx = std::complex<double>;

// Dense row-major complex matrix. All decompositions in this library work on
// square matrices; rectangular shapes appear only as orthonormal basis blocks.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static ComplexMatrix identity(std::size_t m) {
    ComplexMatrix I(m, m);
    for (std::size_t i = 0; i < m; ++i) I(i, i) = 1.0;
    return I;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  cplx* row(std::size_t i) { return a_.data() + i * cols_; }
  const cplx* row(std::size_t i) const { return a_.data() + i * cols_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = std::conj((*this)(i, j));
    return t;
  }

  ComplexMatrix columns(std::size_t first, std::size_t count) const {
    ComplexMatrix b(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) b(i, j) = (*this)(i, first + j);
    return b;
  }

  void set_columns(std::size_t first, const ComplexMatrix& b) {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i, first + j) = b(i, j);
  }

  bool all_finite() const {
    for (const cplx& z : a_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  void require_finite(const char* who) const {
    if (!all_finite())
      throw domain_error(std::string(who) + ": matrix has non-finite entries");
  }

  ComplexMatrix& operator+=(const ComplexMatrix& b) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& b) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= b.a_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (cplx& z : a_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b) {
    ComplexMatrix c(a.rows_, b.cols_);
    // i-k-j order keeps the inner loop contiguous in both b and c.
    for (std::size_t i = 0; i < a.rows_; ++i) {
      cplx* ci = c.row(i);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0)) continue;
        const cplx* bk = b.row(k);
        for (std::size_t j = 0; j < b.cols_; ++j) ci[j] += aik * bk[j];
      }
    }
    return c;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : a_) s += std::norm(z);
    return std::sqrt(s);
  }

  double one_norm() const {  // max column sum
    std::vector<double> col(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) col[j] += std::abs((*this)(i, j));
    return cols_ ? *std::max_element(col.begin(), col.end()) : 0.0;
  }

  double inf_norm() const {  // max row sum
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
      best = std::max(best, s);
    }
    return best;
  }

  double max_abs() const {
    double best = 0.0;
    for (const cplx& z : a_) best = std::max(best, std::abs(z));
    return best;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

// (A + A*)/2, made Hermitian entry-exactly.
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  ComplexMatrix h(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    h(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < m; ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

// ||A - A*||_F without forming the difference.
inline double skew_defect_frobenius(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    s += std::norm(a(i, i) - std::conj(a(i, i)));
    for (std::size_t j = i + 1; j < m; ++j)
      s += 2.0 * std::norm(a(i, j) - std::conj(a(j, i)));
  }
  return std::sqrt(s);
}

// ||A*A - I||_F.
inline double unitarity_defect(const ComplexMatrix& a) {
  ComplexMatrix g = a.adjoint() * a;
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return g.frobenius_norm();
}

}  // namespace unisign
