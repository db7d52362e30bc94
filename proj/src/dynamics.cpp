#include "qrecon/dynamics.hpp"

#include "qrecon/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qrecon::dynamics {

Hamiltonian::Hamiltonian(Matrix m, const Tolerance& tol) : m_(std::move(m)) {
  require_hermitian(m_, tol, "Hamiltonian");
  m_ = hermitian_part(m_);
}

Matrix evolve(const Hamiltonian& h, double t, const Tolerance& tol) {
  if (t == 0.0) return Matrix::identity(h.dim());
  return mat_fun(h.mat(), MatFn::exp(cplx(0.0, -t)), tol);
}

double wigner_check(const Matrix& u, const std::vector<std::pair<Matrix, Matrix>>& pairs) {
  if (!u.is_square()) throw Error(ErrorCode::NotSquare, "wigner_check: U must be square");
  double worst = 0.0;
  for (const auto& [x, y] : pairs) {
    if (x.rows() != u.cols() || y.rows() != u.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "wigner_check: vector length differs from U");
    }
    worst = std::max(worst, std::abs(inner(u * x, u * y) - inner(x, y)));
  }
  return worst;
}

Povm::Povm(std::vector<Matrix> effects, const Tolerance& tol) : effects_(std::move(effects)) {
  if (effects_.empty()) throw Error(ErrorCode::NotAResolution, "POVM has no effects");
  const std::size_t d = effects_.front().rows();
  Matrix sum(d, d);
  for (std::size_t b = 0; b < effects_.size(); ++b) {
    Matrix& e = effects_[b];
    if (!e.is_square() || e.rows() != d) throw Error(ErrorCode::DimensionMismatch, "POVM effects differ in size");
    if (!is_hermitian(e, tol.eq_tol)) throw Error(ErrorCode::NotAnEffect, "effect " + std::to_string(b) + " is not Hermitian");
    e = hermitian_part(e);
    const double lmin = eig_hermitian(e, tol).values.front();
    if (lmin < -10 * tol.eq_tol) {
      throw Error(ErrorCode::NotAnEffect, "effect " + std::to_string(b) + " has eigenvalue " + std::to_string(lmin));
    }
    sum += e;
  }
  const double defect = max_abs_diff(sum, Matrix::identity(d));
  if (defect > 10 * tol.eq_tol) {
    throw Error(ErrorCode::NotAResolution, "effects sum to I only within " + std::to_string(defect));
  }
}

double Povm::probability(const states::DensityMatrix& rho, std::size_t b) const {
  if (b >= effects_.size()) throw Error(ErrorCode::OutOfRange, "no outcome " + std::to_string(b));
  if (rho.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "POVM and state dimensions differ");
  return hs_inner(rho.mat(), effects_[b]).real();
}

double Povm::max_overlap() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < effects_.size(); ++a)
    for (std::size_t b = 0; b < effects_.size(); ++b)
      if (a != b) worst = std::max(worst, (effects_[a] * effects_[b]).max_abs());
  return worst;
}

namespace {

std::size_t system_dim(const Matrix& u, std::size_t dp) {
  if (dp == 0 || u.rows() % dp != 0) {
    throw Error(ErrorCode::DimensionMismatch, "unitary dimension " + std::to_string(u.rows()) +
                                                  " is not a multiple of the ancilla dimension " + std::to_string(dp));
  }
  return u.rows() / dp;
}

}  // namespace

Povm ancilla_povm(const Matrix& u, const states::DensityMatrix& rho_p, const std::vector<states::Projector>& projectors,
                  const Tolerance& tol) {
  if (!u.is_square()) throw Error(ErrorCode::NotSquare, "ancilla_povm: U must be square");
  if (!is_unitary(u, 10 * tol.eq_tol)) throw Error(ErrorCode::NotUnitary, "ancilla_povm: U is not unitary");
  const std::size_t dp = rho_p.dim();
  const std::size_t ds = system_dim(u, dp);
  if (projectors.empty()) throw Error(ErrorCode::NotAResolution, "no ancilla projectors");

  Matrix sum(dp, dp);
  for (std::size_t a = 0; a < projectors.size(); ++a) {
    if (projectors[a].dim() != dp) throw Error(ErrorCode::DimensionMismatch, "ancilla projector has the wrong dimension");
    sum += projectors[a].mat();
    for (std::size_t b = a + 1; b < projectors.size(); ++b) {
      if ((projectors[a].mat() * projectors[b].mat()).max_abs() > 10 * tol.eq_tol) {
        throw Error(ErrorCode::NotAResolution, "ancilla projectors " + std::to_string(a) + " and " + std::to_string(b) +
                                                   " are not orthogonal");
      }
    }
  }
  if (max_abs_diff(sum, Matrix::identity(dp)) > 10 * tol.eq_tol) {
    throw Error(ErrorCode::NotAResolution, "ancilla projectors do not sum to I");
  }

  const Matrix is = Matrix::identity(ds);
  const Matrix weight = kron(is, rho_p.mat());
  const Matrix ud = u.adjoint();
  std::vector<Matrix> effects;
  for (const auto& p : projectors) {
    const Matrix heis = ud * kron(is, p.mat()) * u;
    effects.push_back(hermitian_part(partial_trace(weight * heis, TraceOut::Second, ds, dp)));
  }
  return Povm(std::move(effects), tol);
}

double joint_probability(const Matrix& u, const states::DensityMatrix& rho_s, const states::DensityMatrix& rho_p,
                         const states::Projector& p_b) {
  const std::size_t ds = rho_s.dim();
  if (u.rows() != ds * rho_p.dim() || p_b.dim() != rho_p.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "joint_probability: dimensions do not match U");
  }
  const Matrix out = u * kron(rho_s.mat(), rho_p.mat()) * u.adjoint();
  return hs_inner(out, kron(Matrix::identity(ds), p_b.mat())).real();
}

double probability_gap(const Povm& povm, const Matrix& u, const states::DensityMatrix& rho_p,
                       const std::vector<states::Projector>& projectors,
                       const std::vector<states::DensityMatrix>& test_states) {
  if (povm.size() != projectors.size()) throw Error(ErrorCode::DimensionMismatch, "one projector per effect expected");
  double worst = 0.0;
  for (const auto& rho : test_states)
    for (std::size_t b = 0; b < povm.size(); ++b)
      worst = std::max(worst, std::abs(povm.probability(rho, b) - joint_probability(u, rho, rho_p, projectors[b])));
  return worst;
}

json to_json(const Povm& p) {
  json effects = json::array();
  for (const auto& e : p.effects()) effects.push_back(matrix_to_json(e));
  return json{{"effects", effects}, {"max_overlap", p.max_overlap()}};
}

}  // namespace qrecon::dynamics
