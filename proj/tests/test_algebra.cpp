#include "qrecon/algebra.hpp"
#include "qrecon/fixtures.hpp"

#include "test_util.hpp"

using namespace qrecon;
using namespace qrecon::algebra;
using states::DensityMatrix;

namespace {

// dim of {X : [X, b] = 0 for all b} via row-major vec(X): vec(bX - Xb) =
// (b (x) I - I (x) b^T) vec(X).
std::size_t commutant_dim_oracle(const std::vector<Matrix>& elements, std::size_t d) {
  Matrix stacked(0, d * d);
  for (const auto& b : elements) {
    const Matrix block = kron(b, Matrix::identity(d)) - kron(Matrix::identity(d), b.transpose());
    stacked = hstack(stacked.adjoint(), block.adjoint()).adjoint();
  }
  if (stacked.rows() == 0) return d * d;
  return null_basis(stacked).cols();
}

Matrix embed_left(const Matrix& a) { return kron(a, Matrix::identity(2)); }
Matrix embed_right(const Matrix& b) { return kron(Matrix::identity(2), b); }

MatrixAlgebra left_m2() { return generate({embed_left(testing::sigma_x()), embed_left(testing::sigma_z())}, true); }
MatrixAlgebra right_m2() { return generate({embed_right(testing::sigma_x()), embed_right(testing::sigma_z())}, true); }

std::vector<MatrixAlgebra> corpus() {
  Rng rng(21);
  std::vector<MatrixAlgebra> out;
  out.push_back(generate({testing::sigma_z()}, true));
  out.push_back(generate({testing::sigma_x(), testing::sigma_z()}, true));
  out.push_back(generate({}, true, 3));
  out.push_back(left_m2());
  out.push_back(generate({Matrix{{1.0, 2.0, 0.0}, {2.0, 1.0, 0.0}, {0.0, 0.0, 5.0}}}, true));
  out.push_back(generate({fixtures::cbh_e()}, true));
  out.push_back(generate({fixtures::cbh_f()}, true));
  out.push_back(generate({fixtures::cbh_e(), fixtures::cbh_f()}, true));
  out.push_back(generate({random_hermitian(3, rng)}, true));
  const Matrix blk = Matrix{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}};
  out.push_back(generate({blk, kron(Matrix::identity(2), testing::sigma_x())}, true));
  return out;
}

}  // namespace

TEST_CASE("generate examples") {
  const MatrixAlgebra diag = generate({testing::sigma_z()}, true);
  CHECK(diag.dim() == 2);
  CHECK(diag.contains(Matrix::unit(2, 0, 0)));
  CHECK_FALSE(diag.contains(testing::sigma_x()));
  CHECK(generate({testing::sigma_x(), testing::sigma_z()}, true).dim() == 4);
  const MatrixAlgebra scalars = generate({}, true, 2);
  CHECK(scalars.dim() == 1);
  CHECK(scalars.contains_identity());
  CHECK_FALSE(generate({Matrix::unit(2, 0, 0)}, false).contains_identity());
  // A non-normal generator pulls in its adjoint.
  CHECK(generate({Matrix::unit(2, 0, 1)}, false).dim() == 4);
  CHECK_THROWS_CODE(generate({Matrix::identity(2), Matrix::identity(3)}, true), ErrorCode::DimensionMismatch);
}

TEST_CASE("generated bases are Hermitian, orthonormal and product closed") {
  for (const auto& a : corpus()) {
    const auto& b = a.basis();
    for (std::size_t i = 0; i < b.size(); ++i) {
      CHECK(max_abs_diff(b[i], b[i].adjoint()) <= 1e-14);
      for (std::size_t j = 0; j < b.size(); ++j) {
        CHECK(std::abs(hs_inner(b[i], b[j]) - (i == j ? 1.0 : 0.0)) <= 1e-10);
        CHECK(a.contains(b[i] * b[j]));
      }
    }
    CHECK(equal(generate(a.basis(), false), a));
    CHECK_NOTHROW(MatrixAlgebra::from_span(a.ambient_dim(), a.basis()));
  }
  CHECK_THROWS_CODE(MatrixAlgebra::from_span(2, {testing::sigma_x(), testing::sigma_z()}), ErrorCode::InvalidInput);
}

TEST_CASE("commutant examples") {
  const MatrixAlgebra full = generate({testing::sigma_x(), testing::sigma_z()}, true);
  const MatrixAlgebra c = commutant(full);
  CHECK(c.dim() == 1);
  CHECK(c.contains(Matrix::identity(2)));
  const MatrixAlgebra diag = generate({testing::sigma_z()}, true);
  CHECK(equal(commutant(diag), diag));
  CHECK(commutant(generate({}, true, 3)).dim() == 9);
  CHECK(equal(commutant(left_m2()), right_m2()));
}

TEST_CASE("commutant dimension matches the vectorized oracle") {
  for (const auto& a : corpus()) {
    const MatrixAlgebra c = commutant(a);
    CHECK(c.dim() == commutant_dim_oracle(a.basis(), a.ambient_dim()));
    for (const auto& x : c.basis())
      for (const auto& y : a.basis()) CHECK(commutator(x, y).max_abs() <= 1e-8);
  }
}

TEST_CASE("double commutant audit") {
  auto full = double_commutant_audit(generate({testing::sigma_x(), testing::sigma_z()}, true));
  CHECK(full.dim_a == 4);
  CHECK(full.dim_commutant == 1);
  CHECK(full.dim_double == 4);
  CHECK(full.equals);
  auto diag = double_commutant_audit(generate({testing::sigma_z()}, true));
  CHECK(diag.dim_a == 2);
  CHECK(diag.dim_commutant == 2);
  CHECK(diag.dim_double == 2);
  CHECK(diag.equals);
  auto corner = double_commutant_audit(generate({Matrix::unit(2, 0, 0)}, false));
  CHECK(corner.dim_a == 1);
  CHECK(corner.dim_double == 2);
  CHECK_FALSE(corner.equals);
  CHECK(corner.triple_equals);
  for (const auto& a : corpus()) {
    const auto r = double_commutant_audit(a);
    CHECK(r.equals);
    CHECK(r.triple_equals);
    CHECK(r.dim_triple == r.dim_commutant);
  }
}

TEST_CASE("center and factor") {
  CHECK(center_factor(generate({}, true, 3)).is_factor);
  CHECK(center_factor(generate({Matrix::unit(3, 0, 1), Matrix::unit(3, 1, 2)}, true)).is_factor);
  const MatrixAlgebra diag = generate({testing::sigma_z()}, true);
  const CenterReport dc = center_factor(diag);
  CHECK_FALSE(dc.is_factor);
  CHECK(equal(dc.center, diag));
  // {A (+) A} inside M_4 is a copy of M_2.
  auto doubled = [](const Matrix& m) { return kron(Matrix::identity(2), m); };
  const MatrixAlgebra aa = generate({doubled(testing::sigma_x()), doubled(testing::sigma_z())}, true);
  CHECK(aa.dim() == 4);
  CHECK(center_factor(aa).is_factor);
  CHECK_THROWS_CODE(center_factor(generate({Matrix::unit(2, 0, 0)}, false)), ErrorCode::NotUnital);
}

TEST_CASE("kinematic independence") {
  CHECK(kinematic_independence(left_m2(), right_m2()).independent);
  const MatrixAlgebra e = generate({fixtures::cbh_e()}, true);
  const MatrixAlgebra f = generate({fixtures::cbh_f()}, true);
  // [E, F] has entries +-1/2 at (4,5) and (5,4).
  const Matrix ef = commutator(fixtures::cbh_e(), fixtures::cbh_f());
  CHECK(ef(4, 5) == cplx(0.5));
  CHECK(ef(5, 4) == cplx(-0.5));
  CHECK(ef.max_abs() == 0.5);
  const IndependenceReport r = kinematic_independence(e, f);
  CHECK_FALSE(r.independent);
  CHECK(r.worst_commutator > 0.1);
  for (const auto& a : corpus()) CHECK(kinematic_independence(a, commutant(a)).independent);
  CHECK_THROWS_CODE(kinematic_independence(e, left_m2()), ErrorCode::DimensionMismatch);
}

TEST_CASE("cbh T_E") {
  Rng rng(22);
  const Matrix a = random_hermitian(3, rng);
  CHECK(max_abs_diff(cbh_TE(Matrix::identity(3), a), a) <= 1e-12);
  CHECK(cbh_TE(Matrix::unit(2, 0, 0), testing::sigma_x()).max_abs() <= 1e-15);
  CHECK(max_abs_diff(cbh_TE(Matrix::identity(2) * 0.5, testing::sigma_x()), testing::sigma_x()) <= 1e-14);
  CHECK_THROWS_CODE(cbh_TE(Matrix::identity(2) * 1.5, a), ErrorCode::DimensionMismatch);
  CHECK_THROWS_CODE(cbh_TE(Matrix::identity(3) * 1.5, a), ErrorCode::NotAnEffect);
  CHECK_THROWS_CODE(cbh_TE(Matrix::identity(3) * -0.1, a), ErrorCode::NotAnEffect);

  // Effects from the left factor leave the right factor untouched; T_E(I) = I.
  for (int k = 0; k < 20; ++k) {
    const Matrix lam = mat_fun(random_density(2, rng), MatFn::power(1.0));
    const Matrix e = embed_left(lam);
    const Matrix b = embed_right(random_hermitian(2, rng));
    CHECK(max_abs_diff(cbh_TE(e, b), b) <= 1e-12);
    CHECK(max_abs_diff(cbh_TE(e, Matrix::identity(4)), Matrix::identity(4)) <= 1e-12);
  }
}

TEST_CASE("joint state extension") {
  Rng rng(23);
  SUBCASE("tensor factors") {
    const Matrix r1 = random_density(2, rng), r2 = random_density(2, rng);
    const DensityMatrix s1(kron(r1, random_density(2, rng))), s2(kron(random_density(2, rng), r2));
    const ExtensionReport rep = joint_state_extension(left_m2(), right_m2(), s1, s2);
    REQUIRE(rep.feasible);
    CHECK(rep.residual <= kExtensionTolerance);
    // Marginals by partial trace, independent of the constraint bookkeeping.
    CHECK(max_abs_diff(partial_trace(rep.state->mat(), TraceOut::Second, 2, 2), r1) <= 1e-6);
    CHECK(max_abs_diff(partial_trace(rep.state->mat(), TraceOut::First, 2, 2), r2) <= 1e-6);
    CHECK(extension_residual(left_m2(), right_m2(), s1, s2, kron(r1, r2)) <= 1e-12);
  }
  SUBCASE("the non-commuting 6x6 pair") {
    const MatrixAlgebra e = generate({fixtures::cbh_e()}, true);
    const MatrixAlgebra f = generate({fixtures::cbh_f()}, true);
    for (int k = 0; k < 5; ++k) {
      const DensityMatrix s1(random_density(6, rng)), s2(random_density(6, rng));
      const ExtensionReport rep = joint_state_extension(e, f, s1, s2);
      CHECK(rep.feasible);
      CHECK(rep.residual <= kExtensionTolerance);
      if (rep.state) CHECK(extension_residual(e, f, s1, s2, rep.state->mat()) <= kExtensionTolerance);
    }
  }
  SUBCASE("contradictory marginals") {
    const MatrixAlgebra full = generate({testing::sigma_x(), testing::sigma_z()}, true);
    const ExtensionReport rep =
        joint_state_extension(full, full, DensityMatrix(Matrix::unit(2, 0, 0)), DensityMatrix(Matrix::unit(2, 1, 1)), 500);
    CHECK_FALSE(rep.feasible);
    CHECK_FALSE(rep.state.has_value());
    CHECK(rep.residual > 0.1);
    CHECK(rep.iterations == 500);
  }
}

TEST_CASE("algebra JSON") {
  json j{{"ambient_dim", 2}, {"generators", json::array({matrix_to_json(testing::sigma_z())})}, {"with_identity", true}};
  const MatrixAlgebra a = algebra_from_json(j);
  CHECK(a.dim() == 2);
  CHECK(to_json(a)["dim"] == 2);
  j["ambient_dim"] = 3;
  CHECK_THROWS_CODE(algebra_from_json(j), ErrorCode::InvalidInput);
  CHECK_THROWS_CODE(algebra_from_json(json{{"generators", json::array()}}), ErrorCode::InvalidInput);
}
