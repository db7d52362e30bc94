#pragma once

#include "qrecon/matrix.hpp"

#include <vector>

namespace qrecon {

// Numerical tolerance policy shared by every module.
//   eq_tol   absolute entrywise tolerance for equalities
//   rank_tol relative singular-value / eigenvalue threshold for rank decisions
struct Tolerance {
  double eq_tol = 1e-9;
  double rank_tol = 1e-8;

  // Throws InvalidInput unless both are strictly positive.
  void validate() const;
};

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // unitary, columns are eigenvectors
};

// Cyclic Jacobi diagonalisation of a Hermitian matrix. Sweep order is fixed
// (p < q, row-major), so results are reproducible bit-for-bit.
EigenSystem eig_hermitian(const Matrix& m, const Tolerance& tol = {});

struct Svd {
  Matrix u;                    // rows x n, columns with sigma > 0 are orthonormal
  std::vector<double> sigma;   // descending, length n = cols
  Matrix v;                    // n x n unitary
};

// One-sided (Hestenes) Jacobi SVD: a = u diag(sigma) v^dag.
Svd svd(const Matrix& a);

// Number of singular values above rank_tol * sigma_max (and above eq_tol).
std::size_t numerical_rank(const Svd& s, const Tolerance& tol);

// Orthonormal basis of the column space of `a` (rows x k).
Matrix range_basis(const Matrix& a, const Tolerance& tol = {});
// Orthonormal basis of the null space of `a` (cols x k).
Matrix null_basis(const Matrix& a, const Tolerance& tol = {});

// Scalar function tag for mat_fun.
struct MatFn {
  enum class Kind { Exp, Log, Power };
  Kind kind = Kind::Exp;
  cplx param = 1.0;  // Exp: scale s in exp(s * lambda); Power: exponent z.

  static MatFn exp(cplx scale = 1.0) { return {Kind::Exp, scale}; }
  static MatFn log() { return {Kind::Log, 0.0}; }
  static MatFn power(cplx z) { return {Kind::Power, z}; }
};

// V diag(f(lambda)) V^dag for Hermitian m. Log and non-integer powers require
// every eigenvalue above rank_tol * lambda_max (NotPositiveDefinite otherwise).
Matrix mat_fun(const Matrix& m, const MatFn& f, const Tolerance& tol = {});

enum class TraceOut { First, Second };

// Partial trace over one factor of a (da*db)-dimensional product space.
Matrix partial_trace(const Matrix& m, TraceOut which, std::size_t da, std::size_t db);

bool is_hermitian(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);
// Throws NotSquare / NotHermitian.
void require_hermitian(const Matrix& m, const Tolerance& tol, const char* what);

// Projector onto the column span of an orthonormal frame.
Matrix frame_projector(const Matrix& frame);

}  // namespace qrecon
