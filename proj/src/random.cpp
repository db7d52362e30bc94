#include "qrecon/random.hpp"

#include <cmath>

namespace qrecon {

Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng, ScalarField field) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (auto& z : m.data()) {
    const double re = normal(rng);
    const double im = field == ScalarField::Complex ? normal(rng) : 0.0;
    z = cplx(re, im);
  }
  return m;
}

Matrix random_unit_vector(std::size_t d, Rng& rng, ScalarField field) {
  Matrix v = random_gaussian(d, 1, rng, field);
  return v * (1.0 / norm(v));
}

Matrix random_unitary(std::size_t d, Rng& rng, ScalarField field) {
  Matrix g = random_gaussian(d, d, rng, field);
  // Modified Gram-Schmidt, twice, over the columns.
  for (std::size_t c = 0; c < d; ++c) {
    Matrix v = g.col(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < c; ++k) {
        const Matrix qk = g.col(k);
        v -= qk * inner(qk, v);
      }
    }
    g.set_col(c, v * (1.0 / norm(v)));
  }
  return g;
}

Matrix random_hermitian(std::size_t d, Rng& rng) {
  const Matrix g = random_gaussian(d, d, rng);
  return (g + g.adjoint()) * 0.5;
}

Matrix random_density(std::size_t d, Rng& rng) {
  const Matrix g = random_gaussian(d, d, rng);
  Matrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return hermitian_part(rho);
}

}  // namespace qrecon
