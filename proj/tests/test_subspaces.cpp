#include "qrecon/fixtures.hpp"
#include "qrecon/subspaces.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace qrecon;
using namespace qrecon::subspaces;

namespace {

Matrix e(std::size_t d, std::size_t i) { return Matrix::basis_vector(d, i); }

Subspace span(std::size_t d, std::initializer_list<Matrix> vs) { return from_spanning(std::vector<Matrix>(vs), d); }

// Random subspace of z with dimension j.
Subspace random_sub_of(const Subspace& z, std::size_t j, Rng& rng) {
  const Matrix u = random_unitary(z.dim(), rng);
  return Subspace(z.ambient_dim(), z.frame() * u.cols_range(0, j));
}

}  // namespace

TEST_CASE("from_spanning: dependent and near-dependent vectors") {
  CHECK(span(3, {e(3, 0), e(3, 0) * 2.0}).dim() == 1);
  CHECK(from_spanning({}, 3).is_zero());

  // Singular values of [e1, e1 + eps e2] from det and trace of the Gram matrix:
  // s1 s2 = eps, s1^2 + s2^2 = 2 + eps^2.
  const double eps = 1e-12;
  const double s1 = std::sqrt((2 + eps * eps + std::sqrt((2 + eps * eps) * (2 + eps * eps) - 4 * eps * eps)) / 2);
  const double s2 = eps / s1;
  CHECK(s2 / s1 < Tolerance{}.rank_tol);
  CHECK(span(3, {e(3, 0), e(3, 0) + e(3, 1) * eps}).dim() == 1);
  // Above the threshold the second direction survives.
  CHECK(span(3, {e(3, 0), e(3, 0) + e(3, 1) * 1e-6}).dim() == 2);

  CHECK_THROWS_CODE(from_spanning({e(2, 0)}, 3), ErrorCode::DimensionMismatch);
}

TEST_CASE("meet / join / ortho examples") {
  const double h = 1.0 / std::sqrt(2.0);
  const Subspace x = span(2, {e(2, 0)});
  const Subspace y = span(2, {(e(2, 0) + e(2, 1)) * h});
  CHECK(meet(x, y).is_zero());
  CHECK(equal(join(x, y), Subspace::whole(2)));

  CHECK(equal(ortho(span(3, {e(3, 0)})), span(3, {e(3, 1), e(3, 2)})));
  CHECK(equal(ortho(Subspace::zero(3)), Subspace::whole(3)));
  CHECK(ortho(Subspace::whole(3)).is_zero());

  CHECK(leq(x, join(x, y)));
  CHECK_FALSE(leq(join(x, y), x));
  CHECK_THROWS_CODE(meet(x, Subspace::whole(3)), ErrorCode::DimensionMismatch);
}

TEST_CASE("de Morgan on random pairs in C^4") {
  const Tolerance tol;
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Subspace x = random_subspace(4, 1 + trial % 3, rng);
    const Subspace y = random_subspace(4, 1 + (trial / 3) % 3, rng);
    CHECK(equal(ortho(join(x, y, tol), tol), meet(ortho(x, tol), ortho(y, tol), tol), tol));
    CHECK(equal(ortho(meet(x, y, tol), tol), join(ortho(x, tol), ortho(y, tol), tol), tol));
  }
}

TEST_CASE("Hilbert lattice laws on sampled subspaces") {
  const Tolerance tol;
  Rng rng(2024);
  for (std::size_t d : {2u, 3u, 4u, 6u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t kz = 1 + static_cast<std::size_t>(trial) % d;
      const Subspace z = random_subspace(d, kz, rng);
      const Subspace x = random_sub_of(z, static_cast<std::size_t>(trial) % (kz + 1), rng);
      const Subspace y = random_subspace(d, 1 + static_cast<std::size_t>(trial / 2) % d, rng);
      REQUIRE(leq(x, z, tol));
      // Orthomodular law.
      CHECK(equal(join(x, meet(ortho(x, tol), z, tol), tol), z, tol));
      // Criterion form: x < z forces x' ^ z != 0; x = z gives x' ^ z = 0.
      CHECK(meet(ortho(x, tol), z, tol).is_zero() == equal(x, z, tol));
      CHECK(meet(ortho(z, tol), z, tol).is_zero());
      // Finite dimension: modular law.
      CHECK(equal(join(x, meet(y, z, tol), tol), meet(join(x, y, tol), z, tol), tol));
      // Double orthocomplement.
      CHECK(equal(ortho(ortho(y, tol), tol), y, tol));
      // Atomicity: first frame column spans an atom below z.
      const Subspace atom(d, z.frame().col(0));
      CHECK(atom.dim() == 1);
      CHECK(leq(atom, z, tol));
    }
  }
}

TEST_CASE("parallelogram law") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix x = random_gaussian(5, 1, rng);
    const Matrix y = random_gaussian(5, 1, rng);
    const double lhs = std::pow(norm(x + y), 2) + std::pow(norm(x - y), 2);
    const double rhs = 2 * (std::pow(norm(x), 2) + std::pow(norm(y), 2));
    CHECK(std::abs(lhs - rhs) <= 1e-9 * rhs);
  }
}

TEST_CASE("real scalar field keeps real frames and the same laws") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Subspace x = random_subspace(4, 2, rng, ScalarField::Real);
    const Subspace y = random_subspace(4, 1, rng, ScalarField::Real);
    for (const auto& z : x.frame().data()) CHECK(z.imag() == 0.0);
    CHECK(equal(ortho(join(x, y)), meet(ortho(x), ortho(y))));
  }
}

TEST_CASE("generate_lattice: a single line in C^2 gives 2^2") {
  const auto g = generate_lattice({span(2, {e(2, 0)})}, 32);
  CHECK(g.lattice.size() == 4);
  const auto b2 = lattice::build_lattice(fixtures::boolean_spec(2));
  CHECK(lattice::lattice_isomorphic(g.lattice, b2).has_value());
  CHECK(lattice::check_properties(g.lattice).is_boolean);
}

TEST_CASE("generate_lattice: two skew lines in C^2 give MO2") {
  const double h = 1.0 / std::sqrt(2.0);
  const auto g = generate_lattice({span(2, {e(2, 0)}), span(2, {(e(2, 0) + e(2, 1)) * h})}, 32);
  CHECK(g.lattice.size() == 6);
  const auto mo2 = lattice::build_lattice(fixtures::mo2_spec());
  const auto iso = lattice::lattice_isomorphic(mo2, g.lattice);
  REQUIRE(iso.has_value());
  const auto r = lattice::check_properties(g.lattice);
  CHECK(r.is_orthomodular);
  CHECK_FALSE(r.is_distributive);
  CHECK(g.lattice.name(1) == "g0");
  CHECK(g.lattice.name(2) == "g1");
  // Lattice order mirrors inclusion.
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    for (std::size_t j = 0; j < g.elements.size(); ++j)
      CHECK(g.lattice.leq(i, j) == leq(g.elements[i], g.elements[j]));
}

TEST_CASE("generate_lattice: three generic lines in C^3 exceed the budget") {
  Rng rng(3);
  std::vector<Subspace> family;
  for (int k = 0; k < 3; ++k) family.push_back(random_subspace(3, 1, rng));
  CHECK_THROWS_CODE(generate_lattice(family, 32), ErrorCode::ClosureBudgetExceeded);
}

TEST_CASE("is_relevant") {
  const Subspace q1 = span(3, {e(3, 0)});
  CHECK(is_relevant(q1, q1).relevant);
  CHECK_FALSE(is_relevant(ortho(q1), q1).relevant);
  const auto r = is_relevant(span(3, {e(3, 0), e(3, 1)}), q1);
  CHECK_FALSE(r.relevant);
  REQUIRE(r.witness.has_value());
  CHECK(std::abs(std::abs((*r.witness)(1, 0)) - 1.0) < 1e-12);
}

TEST_CASE("subspace JSON round-trip") {
  Rng rng(5);
  const Subspace s = random_subspace(4, 2, rng);
  const Subspace back = from_json(json::parse(to_json(s).dump()));
  CHECK(equal(s, back));
  CHECK(from_json(to_json(Subspace::zero(3))).is_zero());
  CHECK_THROWS_CODE(from_json(json::parse(R"({"rows":1,"cols":1,"data":[[1,0]]})")), ErrorCode::InvalidInput);
}
