#pragma once

// Finite-dimensional matrix *-algebras inside M_d.

#include "qrecon/json_io.hpp"
#include "qrecon/linalg.hpp"
#include "qrecon/states.hpp"

#include <optional>
#include <vector>

namespace qrecon::algebra {

// A *-closed, product-closed subspace of M_d. The basis consists of Hermitian
// matrices, orthonormal under Tr(A^dag B); its complex span is the algebra.
class MatrixAlgebra {
 public:
  // Checks closure under adjoint and products; throws InvalidInput.
  static MatrixAlgebra from_span(std::size_t ambient_dim, const std::vector<Matrix>& elements,
                                 const Tolerance& tol = {});

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Matrix>& basis() const noexcept { return basis_; }
  bool contains_identity() const noexcept { return contains_identity_; }
  // Distance of x from the span, in Frobenius norm.
  double distance(const Matrix& x) const;
  bool contains(const Matrix& x, const Tolerance& tol = {}) const;

 private:
  friend MatrixAlgebra generate(const std::vector<Matrix>&, bool, std::size_t, const Tolerance&);
  MatrixAlgebra() = default;
  std::size_t ambient_dim_ = 0;
  std::vector<Matrix> basis_;
  bool contains_identity_ = false;
};

using AlgebraState = states::DensityMatrix;

// Smallest *-algebra containing the generators (and I if requested).
// `ambient_dim` is only consulted when there are no generators.
// Throws DimensionMismatch / NotSquare.
MatrixAlgebra generate(const std::vector<Matrix>& generators, bool with_identity, std::size_t ambient_dim = 0,
                       const Tolerance& tol = {});

// Same span within 10 eq_tol.
bool equal(const MatrixAlgebra& a, const MatrixAlgebra& b, const Tolerance& tol = {});

MatrixAlgebra commutant(const MatrixAlgebra& a, const Tolerance& tol = {});

struct DoubleCommutantReport {
  std::size_t dim_a = 0, dim_commutant = 0, dim_double = 0, dim_triple = 0;
  bool equals = false;         // A'' = A
  bool triple_equals = false;  // A''' = A'
};
DoubleCommutantReport double_commutant_audit(const MatrixAlgebra& a, const Tolerance& tol = {});

struct CenterReport {
  MatrixAlgebra center;
  bool is_factor = false;
};
// A n A'. Throws NotUnital.
CenterReport center_factor(const MatrixAlgebra& a, const Tolerance& tol = {});

struct IndependenceReport {
  bool independent = false;
  double worst_commutator = 0.0;  // max over basis pairs of |[a_i, b_j]|_max
};
IndependenceReport kinematic_independence(const MatrixAlgebra& a, const MatrixAlgebra& b, const Tolerance& tol = {});

// E^{1/2} A E^{1/2} + (I - E)^{1/2} A (I - E)^{1/2}. Throws NotAnEffect.
Matrix cbh_TE(const Matrix& e, const Matrix& a, const Tolerance& tol = {});

inline constexpr double kExtensionTolerance = 1e-7;

struct ExtensionReport {
  std::optional<states::DensityMatrix> state;  // set when feasible
  bool feasible = false;
  double residual = 0.0;  // max marginal mismatch of the last iterate
  std::size_t iterations = 0;
};

// Searches for a density matrix whose restrictions to A and B agree with
// rho1 and rho2 (Dykstra alternating projections). Infeasibility only means
// the budget ran out. Throws DimensionMismatch.
ExtensionReport joint_state_extension(const MatrixAlgebra& a, const MatrixAlgebra& b, const AlgebraState& rho1,
                                      const AlgebraState& rho2, std::size_t max_iters = 20000,
                                      const Tolerance& tol = {});

// max over basis elements of |Tr(rho a_i) - Tr(rho1 a_i)| and the same for B.
double extension_residual(const MatrixAlgebra& a, const MatrixAlgebra& b, const AlgebraState& rho1,
                          const AlgebraState& rho2, const Matrix& rho);

// {"ambient_dim", "generators", "with_identity"}.
MatrixAlgebra algebra_from_json(const json& j, const Tolerance& tol = {});
json to_json(const MatrixAlgebra& a);

}  // namespace qrecon::algebra
