#include "qrecon/states.hpp"

#include "qrecon/errors.hpp"
#include "qrecon/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace qrecon::states {

DensityMatrix::DensityMatrix(Matrix m, const Tolerance& tol) : m_(std::move(m)) {
  if (!m_.is_square()) throw Error(ErrorCode::NotSquare, "density matrix must be square");
  if (!is_hermitian(m_, tol.eq_tol)) throw Error(ErrorCode::NotADensityMatrix, "not Hermitian");
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > tol.eq_tol) {
    throw Error(ErrorCode::NotADensityMatrix, "trace is " + std::to_string(tr));
  }
  const double lmin = eig_hermitian(m_, tol).values.front();
  if (lmin < -10 * tol.eq_tol) {
    throw Error(ErrorCode::NotADensityMatrix, "negative eigenvalue " + std::to_string(lmin));
  }
}

Projector::Projector(Matrix m, const Tolerance& tol) : m_(std::move(m)) {
  if (!m_.is_square()) throw Error(ErrorCode::NotSquare, "projector must be square");
  if (!is_hermitian(m_, tol.eq_tol)) throw Error(ErrorCode::NotAProjector, "not Hermitian");
  if (max_abs_diff(m_ * m_, m_) > 10 * tol.eq_tol) throw Error(ErrorCode::NotAProjector, "P^2 != P");
}

Projector Projector::rank_one(const Matrix& v) {
  const double n = norm(v);
  if (v.cols() != 1 || n == 0.0) throw Error(ErrorCode::InvalidInput, "rank_one needs a nonzero column vector");
  const Matrix u = v * (1.0 / n);
  return Projector(outer(u, u));
}

std::size_t Projector::rank() const { return static_cast<std::size_t>(std::lround(m_.trace().real())); }

double born(const DensityMatrix& rho, const Projector& p, const Tolerance& tol) {
  if (rho.dim() != p.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "born: state is " + std::to_string(rho.dim()) + "-dimensional, question " +
                                                  std::to_string(p.dim()) + "-dimensional");
  }
  const double v = hs_inner(rho.mat(), p.mat()).real();  // Tr(rho P) for Hermitian rho
  if (v < -tol.eq_tol || v > 1.0 + tol.eq_tol) {
    throw Error(ErrorCode::OutOfRange, "Tr(rho P) = " + std::to_string(v));
  }
  return std::clamp(v, 0.0, 1.0);
}

std::vector<Projector> random_frame(std::size_t d, std::uint64_t seed) {
  if (d < 2) throw Error(ErrorCode::InvalidInput, "random_frame needs d >= 2");
  Rng rng(seed);
  const Matrix u = random_unitary(d, rng);
  std::vector<Projector> frame;
  for (std::size_t k = 0; k < d; ++k) frame.push_back(Projector::rank_one(u.col(k)));
  return frame;
}

std::vector<Matrix> hermitian_basis(std::size_t d) {
  std::vector<Matrix> basis;
  basis.push_back(Matrix::identity(d) * (1.0 / std::sqrt(static_cast<double>(d))));
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      Matrix s(d, d), a(d, d);
      s(j, k) = s(k, j) = h;
      a(j, k) = cplx(0, -h);
      a(k, j) = cplx(0, h);
      basis.push_back(std::move(s));
      basis.push_back(std::move(a));
    }
  }
  for (std::size_t l = 1; l < d; ++l) {
    Matrix g(d, d);
    const double c = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) g(j, j) = c;
    g(l, l) = -c * static_cast<double>(l);
    basis.push_back(std::move(g));
  }
  return basis;
}

GleasonResult gleason_recover(const std::vector<FrameSample>& samples, std::size_t d, const Tolerance& tol) {
  if (d < 3) throw Error(ErrorCode::DimensionTooSmall, std::string(kGleasonHypothesis));
  for (const auto& s : samples) {
    if (s.projector.dim() != d) throw Error(ErrorCode::DimensionMismatch, "sample projector has the wrong dimension");
  }
  const std::vector<Matrix> basis = hermitian_basis(d);
  const std::size_t n = basis.size();
  const std::size_t m = samples.size();

  Matrix design(m, n);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < n; ++k) design(j, k) = hs_inner(basis[k], samples[j].projector.mat()).real();
  const Svd full = svd(design);
  const std::size_t rank = numerical_rank(full, tol);
  if (rank < n) {
    throw Error(ErrorCode::InsufficientSpan, "sample design has rank " + std::to_string(rank) + ", need " +
                                                 std::to_string(n) + " = d^2");
  }

  // Tr rho = 1 fixes the identity coefficient; solve for the traceless part.
  const double c0 = 1.0 / std::sqrt(static_cast<double>(d));
  Matrix reduced = design.cols_range(1, n - 1);
  Matrix rhs(m, 1);
  for (std::size_t j = 0; j < m; ++j) rhs(j, 0) = samples[j].value - design(j, 0).real() * c0;
  const Svd s = svd(reduced);
  const std::size_t r = numerical_rank(s, tol);
  Matrix coeff(n - 1, 1);
  for (std::size_t k = 0; k < r; ++k) {
    cplx proj = 0.0;
    for (std::size_t j = 0; j < m; ++j) proj += std::conj(s.u(j, k)) * rhs(j, 0);
    for (std::size_t i = 0; i < n - 1; ++i) coeff(i, 0) += s.v(i, k) * (proj / s.sigma[k]);
  }

  Matrix rho = basis[0] * c0;
  for (std::size_t k = 1; k < n; ++k) rho += basis[k] * coeff(k - 1, 0).real();
  rho = hermitian_part(rho);

  double repair = 0.0;
  const EigenSystem es = eig_hermitian(rho, tol);
  if (es.values.front() < -kMaxPsdRepair) {
    throw Error(ErrorCode::InfeasibleState, "least-squares solution has eigenvalue " +
                                                std::to_string(es.values.front()) + "; samples are not a frame function");
  }
  if (es.values.front() < 0.0) {
    std::vector<double> clipped = es.values;
    double total = 0.0;
    for (double& l : clipped) total += (l = std::max(l, 0.0));
    for (double& l : clipped) l /= total;
    const Matrix fixed = es.vectors * Matrix::diagonal(std::span<const double>(clipped)) * es.vectors.adjoint();
    repair = max_abs_diff(fixed, rho);
    rho = hermitian_part(fixed);
  }

  double residual = 0.0;
  for (const auto& sample : samples) {
    residual = std::max(residual, std::abs(hs_inner(rho, sample.projector.mat()).real() - sample.value));
  }
  return GleasonResult{DensityMatrix(rho, tol), residual, repair};
}

AuditResult noncontextuality_audit(const DensityMatrix& rho, const Projector& p, std::size_t trials,
                                   std::uint64_t seed, const Tolerance& tol) {
  const std::size_t d = p.dim();
  if (d < 2) throw Error(ErrorCode::InvalidInput, "audit needs d >= 2");
  if (p.rank() != 1) throw Error(ErrorCode::InvalidInput, "audit needs a rank-one projector");
  if (rho.dim() != d) throw Error(ErrorCode::DimensionMismatch, "audit: state and projector dimensions differ");

  const EigenSystem es = eig_hermitian(p.mat(), tol);
  const Matrix v = es.vectors.col(d - 1);
  const double reference = born(rho, p, tol);

  std::vector<double> deviation(trials), defect(trials);
  auto run = [&](std::size_t t) -> double {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(t)};
    Rng rng(seq);
    const Matrix w = random_unitary(d, rng);
    // Gram-Schmidt with v first, then the random columns; keep d vectors.
    std::vector<Matrix> frame{v * (1.0 / norm(v))};
    for (std::size_t c = 0; c < d && frame.size() < d; ++c) {
      Matrix u = w.col(c);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& f : frame) u -= f * inner(f, u);
      if (norm(u) > 1e-6) frame.push_back(u * (1.0 / norm(u)));
    }
    const std::size_t slot = std::uniform_int_distribution<std::size_t>(0, d - 1)(rng);
    std::swap(frame[0], frame[slot]);
    Matrix sum(d, d);
    for (const auto& f : frame) sum += outer(f, f);
    defect[t] = max_abs_diff(sum, Matrix::identity(d));
    deviation[t] = std::abs(born(rho, Projector::rank_one(frame[slot]), tol) - reference);
    return deviation[t];
  };
  kernels::omp::max_over(trials, run);

  AuditResult out;
  for (std::size_t t = 0; t < trials; ++t) {
    out.max_deviation = std::max(out.max_deviation, deviation[t]);
    out.max_frame_defect = std::max(out.max_frame_defect, defect[t]);
  }
  return out;
}

json to_json(const FrameSample& s) { return json{{"projector", matrix_to_json(s.projector.mat())}, {"value", s.value}}; }

FrameSample sample_from_json(const json& j, const Tolerance& tol) {
  if (!j.is_object() || !j.contains("projector") || !j.contains("value") || !j["value"].is_number()) {
    throw Error(ErrorCode::InvalidInput, "frame sample JSON needs \"projector\" and numeric \"value\"");
  }
  const double value = j["value"].get<double>();
  if (value < -tol.eq_tol || value > 1.0 + tol.eq_tol) {
    throw Error(ErrorCode::OutOfRange, "frame function value " + std::to_string(value) + " outside [0, 1]");
  }
  Projector p(matrix_from_json(j["projector"]), tol);
  if (p.rank() != 1) throw Error(ErrorCode::InvalidInput, "frame samples need rank-one projectors");
  return FrameSample{std::move(p), value};
}

}  // namespace qrecon::states
