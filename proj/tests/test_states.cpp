#include "qrecon/states.hpp"

#include "test_util.hpp"

#include <cmath>

using namespace qrecon;
using namespace qrecon::states;

namespace {

// Tr(rho P) summed entrywise, independent of hs_inner.
double trace_product(const Matrix& rho, const Matrix& p) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < rho.rows(); ++i)
    for (std::size_t j = 0; j < rho.cols(); ++j) t += rho(i, j) * p(j, i);
  return t.real();
}

std::vector<FrameSample> forward_samples(const Matrix& rho, std::size_t d, std::size_t frames, std::uint64_t seed) {
  std::vector<FrameSample> out;
  for (std::size_t f = 0; f < frames; ++f)
    for (auto& p : random_frame(d, seed + f)) {
      const double v = trace_product(rho, p.mat());
      out.push_back(FrameSample{std::move(p), v});
    }
  return out;
}

Matrix diag3() {
  const double v[] = {0.5, 1.0 / 3.0, 1.0 / 6.0};
  return Matrix::diagonal(std::span<const double>(v));
}

}  // namespace

TEST_CASE("density matrix and projector validation") {
  CHECK_NOTHROW(DensityMatrix(Matrix::identity(3) * (1.0 / 3.0)));
  CHECK_THROWS_CODE(DensityMatrix(Matrix::identity(2)), ErrorCode::NotADensityMatrix);
  CHECK_THROWS_CODE(DensityMatrix(Matrix{{1.5, 0.0}, {0.0, -0.5}}), ErrorCode::NotADensityMatrix);
  CHECK_THROWS_CODE(DensityMatrix(Matrix{{0.5, 0.5}, {0.0, 0.5}}), ErrorCode::NotADensityMatrix);
  CHECK_THROWS_CODE(DensityMatrix(Matrix(2, 3)), ErrorCode::NotSquare);
  CHECK_THROWS_CODE(Projector(Matrix::identity(2) * 0.5), ErrorCode::NotAProjector);
  CHECK(Projector(Matrix::identity(3)).rank() == 3);
  CHECK(Projector::rank_one(Matrix::column({1.0, cplx(0, 1)})).rank() == 1);
}

TEST_CASE("born examples") {
  Rng rng(3);
  const DensityMatrix mixed(Matrix::identity(3) * (1.0 / 3.0));
  for (int k = 0; k < 10; ++k) {
    CHECK(born(mixed, Projector::rank_one(random_unit_vector(3, rng))) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  const Projector p0(Matrix::unit(2, 0, 0));
  CHECK(born(DensityMatrix(Matrix::unit(2, 0, 0)), p0) == 1.0);
  CHECK(born(DensityMatrix(diag3()), Projector(Matrix::unit(3, 1, 1))) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_CODE(born(mixed, p0), ErrorCode::DimensionMismatch);
}

TEST_CASE("born clamps within tolerance") {
  Matrix r = Matrix::unit(2, 0, 0);
  r(0, 0) = 1.0 + 5e-10;
  r(1, 1) = -5e-10;
  const double v = born(DensityMatrix(r), Projector(Matrix::unit(2, 0, 0)));
  CHECK(v == 1.0);
}

TEST_CASE("born is affine and sums to one over frames") {
  Rng rng(11);
  for (std::size_t d : {2, 3, 5}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix r1 = random_density(d, rng), r2 = random_density(d, rng);
      const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const auto frame = random_frame(d, 100 + trial);
      double total = 0.0;
      for (const auto& p : frame) {
        total += born(DensityMatrix(r1), p);
        const double mixed = born(DensityMatrix(r1 * lambda + r2 * (1.0 - lambda)), p);
        CHECK(std::abs(mixed - lambda * born(DensityMatrix(r1), p) - (1 - lambda) * born(DensityMatrix(r2), p)) <= 1e-9);
      }
      CHECK(std::abs(total - 1.0) <= static_cast<double>(d) * 1e-9);
    }
  }
}

TEST_CASE("random_frame") {
  for (std::size_t d : {2, 3, 6}) {
    const auto f = random_frame(d, 42);
    REQUIRE(f.size() == d);
    Matrix sum(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      CHECK(f[j].rank() == 1);
      sum += f[j].mat();
      for (std::size_t k = j + 1; k < d; ++k) CHECK((f[j].mat() * f[k].mat()).max_abs() <= 1e-9);
    }
    CHECK(max_abs_diff(sum, Matrix::identity(d)) <= 1e-9);
    const auto again = random_frame(d, 42);
    for (std::size_t j = 0; j < d; ++j) CHECK(again[j].mat() == f[j].mat());
  }
  CHECK_THROWS_CODE(random_frame(1, 0), ErrorCode::InvalidInput);
}

TEST_CASE("hermitian_basis is orthonormal and Hermitian") {
  for (std::size_t d : {2, 3, 4}) {
    const auto b = hermitian_basis(d);
    REQUIRE(b.size() == d * d);
    for (std::size_t i = 0; i < b.size(); ++i) {
      CHECK(max_abs_diff(b[i], b[i].adjoint()) == 0.0);
      for (std::size_t j = 0; j < b.size(); ++j) {
        CHECK(std::abs(trace_product(b[i], b[j]) - (i == j ? 1.0 : 0.0)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("gleason recovery examples") {
  const Matrix target = diag3();
  const auto samples = forward_samples(target, 3, 10, 7);  // 30 projectors
  REQUIRE(samples.size() == 30);
  const GleasonResult g = gleason_recover(samples, 3);
  CHECK(max_abs_diff(g.rho.mat(), target) <= 1e-8);
  CHECK(g.residual <= 1e-9);
  CHECK(g.repair == 0.0);

  const Matrix mixed = Matrix::identity(3) * (1.0 / 3.0);
  CHECK(max_abs_diff(gleason_recover(forward_samples(mixed, 3, 10, 1), 3).rho.mat(), mixed) <= 1e-8);

  const std::vector<FrameSample> two(samples.begin(), samples.begin() + 2);
  CHECK_THROWS_CODE(gleason_recover(two, 3), ErrorCode::InsufficientSpan);
  // A single frame only spans the diagonal of its own basis.
  const std::vector<FrameSample> one_frame(samples.begin(), samples.begin() + 3);
  CHECK_THROWS_CODE(gleason_recover(one_frame, 3), ErrorCode::InsufficientSpan);
}

TEST_CASE("gleason refuses dimension two with the theorem hypothesis") {
  const auto samples = forward_samples(Matrix::identity(2) * 0.5, 2, 20, 5);
  try {
    (void)gleason_recover(samples, 2);
    FAIL("expected DimensionTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionTooSmall);
    CHECK(std::string(e.what()).find("dimension >= 3") != std::string::npos);
  }
}

TEST_CASE("gleason recovery round trip on random states") {
  Rng rng(2024);
  for (std::size_t d : {3, 4}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix target = random_density(d, rng);
      const auto samples = forward_samples(target, d, 20 * d, 1000 * d + trial);
      const GleasonResult g = gleason_recover(samples, d);
      CHECK(max_abs_diff(g.rho.mat(), target) <= 1e-8);
      CHECK(g.residual <= 1e-9);
    }
  }
}

TEST_CASE("gleason repairs mild infeasibility and rejects gross infeasibility") {
  // Pure state with values nudged so the least-squares solution dips below zero.
  const Matrix pure = Matrix::unit(3, 0, 0);
  auto samples = forward_samples(pure, 3, 10, 99);
  for (auto& s : samples) s.value -= 1e-8 * (1.0 - 3.0 * s.value);
  const GleasonResult g = gleason_recover(samples, 3);
  CHECK(g.repair > 0.0);
  CHECK(g.repair <= 1e-6);
  CHECK(max_abs_diff(g.rho.mat(), pure) <= 1e-6);

  auto bad = forward_samples(Matrix::identity(3) * (1.0 / 3.0), 3, 10, 3);
  for (std::size_t k = 0; k < bad.size(); ++k) bad[k].value = k % 3 == 0 ? 1.0 : 0.0;
  CHECK_THROWS_CODE(gleason_recover(bad, 3), ErrorCode::InfeasibleState);
}

TEST_CASE("noncontextuality audit") {
  const AuditResult a = noncontextuality_audit(DensityMatrix(Matrix::identity(2) * 0.5), Projector(Matrix::unit(2, 0, 0)), 50, 1);
  CHECK(a.max_deviation <= 1e-9);
  CHECK(a.max_frame_defect <= 1e-9);

  const Matrix plus = Matrix::column({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  const Matrix r{{0.9, 0.0}, {0.0, 0.1}};
  CHECK(noncontextuality_audit(DensityMatrix(r), Projector::rank_one(plus), 50, 2).max_deviation <= 1e-9);

  Rng rng(4);
  const DensityMatrix rho(random_density(4, rng));
  const Projector p = Projector::rank_one(random_unit_vector(4, rng));
  const AuditResult b = noncontextuality_audit(rho, p, 100, 3);
  CHECK(b.max_deviation <= 1e-9);
  CHECK(b.max_frame_defect <= 1e-9);

  CHECK_THROWS_CODE(noncontextuality_audit(rho, Projector(Matrix::identity(4)), 5, 0), ErrorCode::InvalidInput);
}

TEST_CASE("frame sample JSON") {
  const FrameSample s{Projector::rank_one(Matrix::column({1.0, cplx(0, 1), 0.0})), 0.25};
  const FrameSample back = sample_from_json(json::parse(to_json(s).dump()));
  CHECK(back.value == 0.25);
  CHECK(back.projector.mat() == s.projector.mat());
  json bad = to_json(s);
  bad["value"] = 1.5;
  CHECK_THROWS_CODE(sample_from_json(bad), ErrorCode::OutOfRange);
  CHECK_THROWS_CODE(sample_from_json(json{{"value", 0.1}}), ErrorCode::InvalidInput);
  json rank2 = to_json(FrameSample{Projector(Matrix::identity(2)), 0.5});
  CHECK_THROWS_CODE(sample_from_json(rank2), ErrorCode::InvalidInput);
}
