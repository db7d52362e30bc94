#include "qrecon/json_io.hpp"
#include "qrecon/linalg.hpp"
#include "qrecon/random.hpp"
#include "test_util.hpp"

#include <cmath>
#include <numbers>

using namespace qrecon;

TEST_CASE("eig_hermitian: diagonal input") {
  const std::vector<double> d{2.0, 1.0};
  const auto es = eig_hermitian(Matrix::diagonal(std::span<const double>(d)));
  CHECK(es.values[0] == doctest::Approx(1.0));
  CHECK(es.values[1] == doctest::Approx(2.0));
  CHECK(std::abs(es.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(es.vectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian: sigma_x against the characteristic polynomial") {
  // lambda^2 - 1 = 0, eigenvectors (1, -1)/sqrt2 and (1, 1)/sqrt2.
  const auto es = eig_hermitian(testing::sigma_x());
  CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  const double h = 1.0 / std::sqrt(2.0);
  const Matrix minus{{h}, {-h}};
  const Matrix plus{{h}, {h}};
  CHECK(std::abs(inner(minus, es.vectors.col(0))) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(inner(plus, es.vectors.col(1))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eig_hermitian: random 2x2 against closed form") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = random_hermitian(2, rng);
    const double a = m(0, 0).real(), c = m(1, 1).real();
    const double disc = std::sqrt((a - c) * (a - c) / 4.0 + std::norm(m(0, 1)));
    const auto es = eig_hermitian(m);
    CHECK(std::abs(es.values[0] - ((a + c) / 2 - disc)) < 1e-12);
    CHECK(std::abs(es.values[1] - ((a + c) / 2 + disc)) < 1e-12);
  }
}

TEST_CASE("eig_hermitian: error cases") {
  CHECK_THROWS_CODE(eig_hermitian(Matrix{{0.0, 1.0}, {0.0, 0.0}}), ErrorCode::NotHermitian);
  CHECK_THROWS_CODE(eig_hermitian(Matrix(2, 3)), ErrorCode::NotSquare);
}

TEST_CASE("eig_hermitian: reconstruction and unitarity on random Hermitian matrices") {
  const Tolerance tol;
  Rng rng(11);
  for (std::size_t d : {1u, 2u, 3u, 5u, 8u, 16u, 33u}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix m = random_hermitian(d, rng);
      const auto es = eig_hermitian(m, tol);
      const Matrix rebuilt = es.vectors * Matrix::diagonal(std::span<const double>(es.values)) *
                             es.vectors.adjoint();
      CHECK(max_abs_diff(rebuilt, m) <= 10 * tol.eq_tol);
      CHECK(is_unitary(es.vectors, 10 * tol.eq_tol));
      for (std::size_t k = 1; k < d; ++k) CHECK(es.values[k - 1] <= es.values[k]);
    }
  }
}

TEST_CASE("eig_hermitian: degenerate spectrum keeps an orthonormal basis") {
  Rng rng(3);
  const Matrix u = random_unitary(4, rng);
  const std::vector<double> d{1.0, 1.0, 1.0, -2.0};
  const Matrix m = u * Matrix::diagonal(std::span<const double>(d)) * u.adjoint();
  const auto es = eig_hermitian(m);
  CHECK(is_unitary(es.vectors, 1e-12));
  CHECK(es.values[0] == doctest::Approx(-2.0));
  CHECK(es.values[3] == doctest::Approx(1.0));
}

TEST_CASE("mat_fun: examples") {
  CHECK(max_abs_diff(mat_fun(Matrix(3, 3), MatFn::exp()), Matrix::identity(3)) == 0.0);

  const std::vector<double> d41{4.0, 1.0};
  const std::vector<double> d21{2.0, 1.0};
  CHECK(max_abs_diff(mat_fun(Matrix::diagonal(std::span<const double>(d41)), MatFn::power(0.5)),
                     Matrix::diagonal(std::span<const double>(d21))) < 1e-14);

  const double p = 0.7;
  const std::vector<double> dp{p, 1 - p};
  const Matrix u = mat_fun(Matrix::diagonal(std::span<const double>(dp)), MatFn::power(cplx(0, 1)));
  const cplx e0 = std::exp(cplx(0, std::log(0.7)));
  const cplx e1 = std::exp(cplx(0, std::log(0.3)));
  CHECK(std::abs(u(0, 0) - e0) < 1e-14);
  CHECK(std::abs(u(1, 1) - e1) < 1e-14);
  CHECK(std::abs(u(0, 1)) < 1e-15);
}

TEST_CASE("mat_fun: positivity requirements") {
  const std::vector<double> singular{1.0, 0.0};
  const std::vector<double> indefinite{1.0, -1.0};
  const Matrix s = Matrix::diagonal(std::span<const double>(singular));
  const Matrix ind = Matrix::diagonal(std::span<const double>(indefinite));
  CHECK_THROWS_CODE(mat_fun(s, MatFn::log()), ErrorCode::NotPositiveDefinite);
  CHECK_THROWS_CODE(mat_fun(ind, MatFn::power(0.5)), ErrorCode::NotPositiveDefinite);
  CHECK_THROWS_CODE(mat_fun(s, MatFn::power(-1.0)), ErrorCode::NotPositiveDefinite);
  // Integer powers are fine on indefinite input.
  CHECK(max_abs_diff(mat_fun(ind, MatFn::power(2.0)), Matrix::identity(2)) < 1e-14);
  CHECK(max_abs_diff(mat_fun(ind, MatFn::power(-1.0)), ind) < 1e-14);
}

TEST_CASE("mat_fun: imaginary powers are unitary for |t| <= 10") {
  const Tolerance tol;
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix rho = random_density(4, rng);
    const double t = -10.0 + 20.0 * trial / 19.0;
    const Matrix u = mat_fun(rho, MatFn::power(cplx(0, t)), tol);
    CHECK(max_abs_diff(u.adjoint() * u, Matrix::identity(4)) <= 10 * tol.eq_tol);
  }
}

TEST_CASE("mat_fun: exp and log are inverse on positive definite input") {
  Rng rng(9);
  const Matrix rho = random_density(3, rng);
  CHECK(max_abs_diff(mat_fun(mat_fun(rho, MatFn::log()), MatFn::exp()), rho) < 1e-12);
}

TEST_CASE("partial_trace: product states") {
  Rng rng(13);
  const Matrix x = random_gaussian(2, 2, rng);
  const Matrix y = random_gaussian(3, 3, rng);
  CHECK(max_abs_diff(partial_trace(kron(x, y), TraceOut::Second, 2, 3), x * y.trace()) < 1e-13);
  CHECK(max_abs_diff(partial_trace(kron(x, y), TraceOut::First, 2, 3), y * x.trace()) < 1e-13);
  CHECK(max_abs_diff(partial_trace(kron(Matrix::identity(4), y), TraceOut::First, 4, 3), y * 4.0) < 1e-13);
}

TEST_CASE("partial_trace: GHZ reduces to I/2 on the first qubit") {
  Matrix psi(8, 1);
  psi(0, 0) = 1.0 / std::sqrt(2.0);
  psi(7, 0) = 1.0 / std::sqrt(2.0);
  const Matrix rho = outer(psi, psi);
  // Oracle: sum over the basis of the last two qubits directly.
  Matrix expected(2, 2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t k = 0; k < 4; ++k) expected(a, b) += rho(a * 4 + k, b * 4 + k);
  const Matrix reduced = partial_trace(rho, TraceOut::Second, 2, 4);
  CHECK(max_abs_diff(reduced, expected) == 0.0);
  CHECK(max_abs_diff(reduced, Matrix::identity(2) * 0.5) < 1e-15);
}

TEST_CASE("partial_trace: trace preserved and dimension checked") {
  Rng rng(17);
  const Matrix m = random_gaussian(6, 6, rng);
  CHECK(std::abs(partial_trace(m, TraceOut::First, 2, 3).trace() - m.trace()) < 1e-13);
  CHECK(std::abs(partial_trace(m, TraceOut::Second, 2, 3).trace() - m.trace()) < 1e-13);
  CHECK_THROWS_CODE(partial_trace(m, TraceOut::First, 2, 2), ErrorCode::DimensionMismatch);
}

TEST_CASE("svd: reconstruction, rank and null space") {
  Rng rng(19);
  const Matrix a = random_gaussian(5, 3, rng) * random_gaussian(3, 4, rng);  // rank 3
  const Svd s = svd(a);
  Matrix rebuilt = s.u * Matrix::diagonal(std::span<const double>(s.sigma)) * s.v.adjoint();
  CHECK(max_abs_diff(rebuilt, a) < 1e-12);
  CHECK(numerical_rank(s, Tolerance{}) == 3);
  const Matrix n = null_basis(a);
  CHECK(n.cols() == 1);
  CHECK((a * n).max_abs() < 1e-12);
  CHECK(range_basis(a).cols() == 3);
}

TEST_CASE("tolerance must be positive") {
  CHECK_THROWS_CODE((Tolerance{0.0, 1e-8}.validate()), ErrorCode::InvalidInput);
  CHECK_THROWS_CODE((Tolerance{1e-9, -1.0}.validate()), ErrorCode::InvalidInput);
  CHECK_NOTHROW(Tolerance{}.validate());
}

TEST_CASE("matrix JSON round-trips bit-exactly") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = random_gaussian(1 + trial % 4, 1 + trial % 3, rng) * 1e-3 * (trial + 1);
    const std::string text = matrix_to_json(m).dump();
    CHECK(matrix_from_json(json::parse(text)) == m);
  }
  CHECK_THROWS_CODE(matrix_from_json(json::parse(R"({"rows":2,"cols":2,"data":[[1,0]]})")),
                    ErrorCode::InvalidInput);
  CHECK_THROWS_CODE(matrix_from_json(json::parse(R"({"rows":1,"cols":1,"data":[[1]]})")),
                    ErrorCode::InvalidInput);
}
