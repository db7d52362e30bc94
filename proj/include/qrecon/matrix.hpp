#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qrecon {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Column vectors are n x 1 matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
  // Row-wise literal: Matrix{{1, 0}, {0, -1}}.
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const cplx> diag);
  static Matrix diagonal(std::span<const double> diag);
  static Matrix column(std::span<const cplx> entries);
  static Matrix column(std::initializer_list<cplx> entries) { return column(std::span<const cplx>(entries.begin(), entries.size())); }
  // |i><j| in dimension n.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j);
  // Basis vector e_i of length n.
  static Matrix basis_vector(std::size_t n, std::size_t i);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }
  const std::vector<cplx>& values() const noexcept { return data_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conj() const;
  Matrix col(std::size_t c) const;
  void set_col(std::size_t c, const Matrix& v);
  // Columns [first, first + count).
  Matrix cols_range(std::size_t first, std::size_t count) const;

  cplx trace() const;
  double max_abs() const;
  double frobenius() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(cplx s);

  bool operator==(const Matrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Matrix a, cplx s);
Matrix operator*(cplx s, Matrix a);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);
// Hilbert-Schmidt inner product Tr(a^dag b).
cplx hs_inner(const Matrix& a, const Matrix& b);
// <x, y> for column vectors.
cplx inner(const Matrix& x, const Matrix& y);
double norm(const Matrix& x);
// max_ij |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);
// Hermitian part (a + a^dag)/2.
Matrix hermitian_part(const Matrix& a);
// Column-stacks the columns of a and b side by side.
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix outer(const Matrix& x, const Matrix& y);

}  // namespace qrecon
