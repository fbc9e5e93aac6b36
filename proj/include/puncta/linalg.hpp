#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace puncta {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using IVec = std::vector<Integer>;
using QVec = std::vector<Rational>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a search exceeds its state budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_cols(const std::vector<std::vector<T>>& cols, std::size_t rows) {
    return from_rows(cols, rows).transpose();
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<std::vector<T>> row_list() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < r_; ++i) out.push_back(row(i));
    return out;
  }
  std::vector<std::vector<T>> col_list() const {
    std::vector<std::vector<T>> out;
    for (std::size_t j = 0; j < c_; ++j) out.push_back(col(j));
    return out;
  }
  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), c_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }
  Matrix select_cols(const std::vector<std::size_t>& idx) const {
    Matrix m(r_, idx.size());
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator<(const Matrix& o) const {
    if (r_ != o.r_) return r_ < o.r_;
    if (c_ != o.c_) return c_ < o.c_;
    return a_ < o.a_;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IMat = Matrix<Integer>;
using QMat = Matrix<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error("matrix dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw Error("matrix dimension mismatch");
  std::vector<T> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw Error("vector dimension mismatch");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IVec& a, const QVec& b);

IVec add(const IVec& a, const IVec& b);
IVec sub(const IVec& a, const IVec& b);
IVec scale(const Integer& k, const IVec& a);
IVec neg(const IVec& a);
bool is_zero(const IVec& a);
bool is_zero(const QVec& a);
IVec zeros(std::size_t n);
IVec unit(std::size_t n, std::size_t i);
IVec concat(const IVec& a, const IVec& b);

Integer gcd_of(const IVec& v);
IVec primitive(const IVec& v);
IVec primitive(const QVec& v);
QVec to_q(const IVec& v);
QMat to_q(const IMat& m);
// Nullopt when some entry is not an integer.
std::optional<IVec> to_z(const QVec& v);

IMat hstack(const IMat& a, const IMat& b);
IMat vstack(const IMat& a, const IMat& b);
IMat rows_to_mat(const std::vector<IVec>& rows, std::size_t cols);
IMat cols_to_mat(const std::vector<IVec>& cols, std::size_t rows);

std::string to_string(const IVec& v);
std::string to_string(const QVec& v);

// A lattice declared by an opaque id and its rank.
struct Lattice {
  std::string id;
  std::size_t rank = 0;
  bool operator==(const Lattice&) const = default;
};

struct LatticeVec {
  IVec coords;
  Lattice lattice;
  LatticeVec() = default;
  LatticeVec(IVec c, Lattice l);
};

struct LatticeMap {
  IMat matrix;
  Lattice source, target;
  LatticeMap() = default;
  LatticeMap(IMat m, Lattice src, Lattice tgt);
  LatticeVec operator()(const LatticeVec& v) const;
};

// this ∘ other; requires other.target == this.source.
LatticeMap compose(const LatticeMap& outer, const LatticeMap& inner);

struct SmithForm {
  IVec diag;  // length min(rows, cols); zeros at the end
  IMat left, right;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IMat& m);
SmithForm smith_normal_form(const LatticeMap& m);

struct IntegralSolution {
  IVec particular;
  std::vector<IVec> kernel;
};

std::optional<IntegralSolution> solve_integral(const IMat& m, const IVec& b);
std::optional<IntegralSolution> solve_integral(const LatticeMap& m, const LatticeVec& b);

// Row Hermite normal form; zero rows dropped.
IMat hermite_rows(const IMat& m);
// Basis (HNF rows) of the sublattice generated by the vectors.
std::vector<IVec> lattice_basis(const std::vector<IVec>& gens, std::size_t dim);
// Basis (HNF rows) of span(gens) ∩ Z^dim.
std::vector<IVec> saturate_sublattice(const std::vector<IVec>& gens, std::size_t dim);
std::vector<LatticeVec> saturate_sublattice(const std::vector<LatticeVec>& gens);
// Saturated basis (HNF rows) of {x in Z^cols : m x = 0}.
std::vector<IVec> integer_kernel(const IMat& m);

std::size_t rank(const QMat& m);
std::size_t rank(const IMat& m);
// Basis of the rational kernel of m.
std::vector<QVec> rational_kernel(const QMat& m);
// Some solution of m x = b, or nullopt.
std::optional<QVec> solve_rational(const QMat& m, const QVec& b);
Rational determinant(const QMat& m);
Integer determinant(const IMat& m);
std::optional<QMat> inverse(const QMat& m);
// Absolute value of the index of the sublattice generated by the columns inside its saturation.
Integer lattice_index(const IMat& cols);

}  // namespace puncta
