#pragma once

#include "qrecon/json_io.hpp"
#include "qrecon/linalg.hpp"
#include "qrecon/states.hpp"

#include <utility>
#include <vector>

namespace qrecon::dynamics {

// Throws NotSquare / NotHermitian.
class Hamiltonian {
 public:
  explicit Hamiltonian(Matrix m, const Tolerance& tol = {});
  const Matrix& mat() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

// exp(-i t H).
Matrix evolve(const Hamiltonian& h, double t, const Tolerance& tol = {});

// max |<Ux, Uy> - <x, y>| over the pairs.
double wigner_check(const Matrix& u, const std::vector<std::pair<Matrix, Matrix>>& pairs);

// Effects E_b: Hermitian, eigenvalues >= -10 eq_tol, sum to I within
// 10 eq_tol. Throws NotAnEffect / NotAResolution.
class Povm {
 public:
  explicit Povm(std::vector<Matrix> effects, const Tolerance& tol = {});
  const std::vector<Matrix>& effects() const noexcept { return effects_; }
  std::size_t size() const noexcept { return effects_.size(); }
  std::size_t dim() const noexcept { return effects_.front().rows(); }
  // Re Tr(rho E_b).
  double probability(const states::DensityMatrix& rho, std::size_t b) const;
  // max_{a != b} |E_a E_b|_max; zero for projective measurements.
  double max_overlap() const;

 private:
  std::vector<Matrix> effects_;
};

// E_b = Tr_P((I (x) rho_P) U^dag (I (x) P_b) U) on the system factor of
// system (x) ancilla. Ancilla projectors are given on the ancilla alone.
// Throws NotUnitary, NotAResolution, DimensionMismatch.
Povm ancilla_povm(const Matrix& u, const states::DensityMatrix& rho_p, const std::vector<states::Projector>& projectors,
                  const Tolerance& tol = {});

// Tr(U (rho_S (x) rho_P) U^dag (I (x) P_b)).
double joint_probability(const Matrix& u, const states::DensityMatrix& rho_s, const states::DensityMatrix& rho_p,
                         const states::Projector& p_b);

// max over states and outcomes of |Tr(rho_S E_b) - joint_probability|.
double probability_gap(const Povm& povm, const Matrix& u, const states::DensityMatrix& rho_p,
                       const std::vector<states::Projector>& projectors,
                       const std::vector<states::DensityMatrix>& test_states);

json to_json(const Povm& p);

}  // namespace qrecon::dynamics
