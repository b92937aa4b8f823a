#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3 {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

enum class ErrorCode {
  NotDefinite,
  NotIsotropic,
  NotPrimitive,
  Singular,
  DimensionMismatch,
  ConeViolation,
  ZeroTProjection,
  InteriorViolation,
  NonIntegralImage,
  NonIntegralClass,
  NotNef,
  NotIsometry,
  SiftFailure,
  OrbitOverflow,
  TooLarge,
  NoFrameFound,
  NotAutomorphism,
  NoDecomposition,
  NotPolarization,
  NoRelation,
  DegenerateSquare,
  NonReduced,
  QuarticIdentityFails,
  BaseLocusTooLarge,
  NonIntegralInvolution,
  SingularHermitian,
  BadInput,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}
  Matrix(std::size_t r, std::size_t c, const T& fill) : r_(r), c_(c), a_(r * c, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.c_) throw Error(ErrorCode::DimensionMismatch, "ragged rows");
      for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }
  void set_row(std::size_t i, const std::vector<T>& v) {
    for (std::size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
  }
  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < r_; ++i) out.push_back(row(i));
    return out;
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

// row vector times matrix
template <class T>
std::vector<T> operator*(const std::vector<T>& v, const Matrix<T>& m) {
  if (v.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "vector-matrix product");
  std::vector<T> out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// x G y^t
template <class T>
T bilinear(const std::vector<T>& x, const Matrix<T>& g, const std::vector<T>& y) {
  return dot(x * g, y);
}

template <class T>
std::vector<T> operator+(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> c(a);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += b[i];
  return c;
}
template <class T>
std::vector<T> operator-(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> c(a);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] -= b[i];
  return c;
}
template <class T>
std::vector<T> scale(const T& s, const std::vector<T>& a) {
  std::vector<T> c(a);
  for (auto& x : c) x *= s;
  return c;
}

RatMatrix to_rat(const IntMatrix& m);
RatVec to_rat(const IntVec& v);
bool is_integral(const RatMatrix& m);
bool is_integral(const RatVec& v);
IntMatrix to_int(const RatMatrix& m);  // throws if not integral
IntVec to_int(const RatVec& v);
Int common_denominator(const RatVec& v);
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);

Int determinant(const IntMatrix& m);  // Bareiss
Rat determinant(const RatMatrix& m);
RatMatrix inverse(const RatMatrix& m);  // throws Singular
std::size_t rank(const RatMatrix& m);

// basis of {x : x·A = 0} over Q, as rows
RatMatrix left_kernel(const RatMatrix& a);
// basis of {x in Z^m : x·A = 0}, as rows (primitive)
IntMatrix integer_left_kernel(const IntMatrix& a);
// some X with X·A = B, throws if inconsistent
RatMatrix solve_left(const RatMatrix& a, const RatMatrix& b);

struct SmithForm {
  IntMatrix U, D, V;
  std::vector<Int> diagonal() const;
};
SmithForm smith_normal_form(const IntMatrix& m);

// nonzero rows of the row-style Hermite normal form (a Z-basis of the row span)
IntMatrix hermite_rows(const IntMatrix& m);

// Returns unimodular B with B·G·Bᵗ LLL-reduced (delta = num/den).
// Definite G of either sign is accepted; indefinite G throws NotDefinite.
IntMatrix lll_reduce(const IntMatrix& gram, long delta_num = 99, long delta_den = 100);
IntMatrix lll_reduce(const RatMatrix& gram, long delta_num = 99, long delta_den = 100);

// sign of definiteness: +1 positive, -1 negative, 0 otherwise (exact LDL with pivoting)
int definiteness(const RatMatrix& gram);
// (positive count, negative count) of a symmetric matrix
std::pair<int, int> signature(const RatMatrix& gram);

Int lcm(const Int& a, const Int& b);
Int floor_div(const Int& a, const Int& b);
Int round_div(const Int& a, const Int& b);  // nearest integer to a/b, ties toward +inf
Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);

std::string to_string(const Rat& r);

}  // namespace k3
