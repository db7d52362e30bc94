#include "qrecon/kernels.hpp"

#include "qrecon/errors.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qrecon::kernels {

namespace {

void check_partial_trace(const Matrix& m, std::size_t da, std::size_t db) {
  if (!m.is_square() || m.rows() != da * db) {
    throw Error(ErrorCode::DimensionMismatch, "partial_trace: matrix is not (da*db) x (da*db)");
  }
}

// Shared row body so both flavours sum in the same order.
inline void matmul_row(const Matrix& a, const Matrix& b, Matrix& out, std::size_t i) {
  const std::size_t inner = a.cols();
  for (std::size_t j = 0; j < b.cols(); ++j) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < inner; ++k) s += a(i, k) * b(k, j);
    out(i, j) = s;
  }
}

inline void kron_row(const Matrix& a, const Matrix& b, Matrix& out, std::size_t ia) {
  for (std::size_t ib = 0; ib < b.rows(); ++ib) {
    const std::size_t r = ia * b.rows() + ib;
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cplx x = a(ia, ja);
      for (std::size_t jb = 0; jb < b.cols(); ++jb) out(r, ja * b.cols() + jb) = x * b(ib, jb);
    }
  }
}

// Entry (r, c) of the reduced matrix.
inline cplx partial_trace_entry(const Matrix& m, bool which_first, std::size_t da, std::size_t db,
                                std::size_t r, std::size_t c) {
  cplx s = 0.0;
  if (which_first) {
    for (std::size_t k = 0; k < da; ++k) s += m(k * db + r, k * db + c);
  } else {
    for (std::size_t k = 0; k < db; ++k) s += m(r * db + k, c * db + k);
  }
  return s;
}

}  // namespace

namespace serial {

void matmul(const Matrix& a, const Matrix& b, Matrix& out) {
  for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, out, i);
}

void kron(const Matrix& a, const Matrix& b, Matrix& out) {
  for (std::size_t ia = 0; ia < a.rows(); ++ia) kron_row(a, b, out, ia);
}

void partial_trace(const Matrix& m, bool which_first, std::size_t da, std::size_t db, Matrix& out) {
  check_partial_trace(m, da, db);
  const std::size_t n = which_first ? db : da;
  out = Matrix(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = partial_trace_entry(m, which_first, da, db, r, c);
}

double max_over(std::size_t count, const std::function<double(std::size_t)>& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < count; ++i) m = std::max(m, f(i));
  return m;
}

}  // namespace serial

namespace omp {

void matmul(const Matrix& a, const Matrix& b, Matrix& out) {
  const auto rows = static_cast<long long>(a.rows());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < rows; ++i) matmul_row(a, b, out, static_cast<std::size_t>(i));
}

void kron(const Matrix& a, const Matrix& b, Matrix& out) {
  const auto rows = static_cast<long long>(a.rows());
#pragma omp parallel for schedule(static)
  for (long long ia = 0; ia < rows; ++ia) kron_row(a, b, out, static_cast<std::size_t>(ia));
}

void partial_trace(const Matrix& m, bool which_first, std::size_t da, std::size_t db, Matrix& out) {
  check_partial_trace(m, da, db);
  const std::size_t n = which_first ? db : da;
  out = Matrix(n, n);
  const auto total = static_cast<long long>(n * n);
#pragma omp parallel for schedule(static)
  for (long long idx = 0; idx < total; ++idx) {
    const auto r = static_cast<std::size_t>(idx) / n;
    const auto c = static_cast<std::size_t>(idx) % n;
    out(r, c) = partial_trace_entry(m, which_first, da, db, r, c);
  }
}

double max_over(std::size_t count, const std::function<double(std::size_t)>& f) {
  double m = 0.0;
  std::exception_ptr failure;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) reduction(max : m)
  for (long long i = 0; i < n; ++i) {
    try {
      m = std::max(m, f(static_cast<std::size_t>(i)));
    } catch (...) {
#pragma omp critical(qrecon_max_over)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return m;
}

}  // namespace omp

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qrecon::kernels
