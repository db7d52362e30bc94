#pragma once

// Dense kernels in two flavours. `serial` is the reference; `omp` splits the
// outer loop across OpenMP threads. Each output entry is accumulated in the
// same order in both, so results agree bit-for-bit and the parallel path
// never changes a report.

#include "qrecon/matrix.hpp"

#include <cstddef>
#include <functional>

namespace qrecon::kernels {

// Work (in complex multiply-adds) above which Matrix operators switch to omp.
inline constexpr std::size_t kParallelThreshold = 32 * 32 * 32;

namespace serial {
void matmul(const Matrix& a, const Matrix& b, Matrix& out);
void kron(const Matrix& a, const Matrix& b, Matrix& out);
// Trace over the first (which_first = true) or second tensor factor.
void partial_trace(const Matrix& m, bool which_first, std::size_t da, std::size_t db, Matrix& out);
double max_over(std::size_t count, const std::function<double(std::size_t)>& f);
}  // namespace serial

namespace omp {
void matmul(const Matrix& a, const Matrix& b, Matrix& out);
void kron(const Matrix& a, const Matrix& b, Matrix& out);
void partial_trace(const Matrix& m, bool which_first, std::size_t da, std::size_t db, Matrix& out);
// max_i f(i) over i in [0, count); f must be thread safe. max is order
// independent, so the value matches the serial reduction exactly.
double max_over(std::size_t count, const std::function<double(std::size_t)>& f);
}  // namespace omp

int max_threads();

}  // namespace qrecon::kernels
