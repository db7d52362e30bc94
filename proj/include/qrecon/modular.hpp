#pragma once

// Tomita-Takesaki data for a faithful state on M_d, acting on C^d (x) C^d.
// Convention: alpha_t(A) = Delta^{-it} (A (x) I) Delta^{it} = rho^{-it} A rho^{it},
// which is e^{itH} A e^{-itH} for H = -ln rho and satisfies KMS at beta = 1.

#include "qrecon/dynamics.hpp"
#include "qrecon/json_io.hpp"
#include "qrecon/linalg.hpp"
#include "qrecon/states.hpp"

#include <vector>

namespace qrecon::modular {

inline constexpr double kTomitaTolerance = 1e-8;
inline constexpr double kFlowTolerance = 1e-8;
inline constexpr double kInnerTolerance = 1e-9;

class ModularData {
 public:
  std::size_t dim() const noexcept { return rho_.dim(); }
  const states::DensityMatrix& rho() const noexcept { return rho_; }
  // Row-major vec(rho^{1/2}) = sum_i sqrt(p_i) v_i (x) conj(v_i).
  const Matrix& psi() const noexcept { return psi_; }
  // rho (x) conj(rho)^{-1}.
  const Matrix& delta() const noexcept { return delta_; }
  // J x = swap_unitary * conj(x).
  const Matrix& swap_unitary() const noexcept { return swap_; }
  // max over matrix units E_ij of |J Delta^{1/2} (E_ij (x) I) psi - (E_ji (x) I) psi|.
  double tomita_error() const noexcept { return tomita_error_; }

  // rho^z on the strictly positive spectrum.
  Matrix rho_power(cplx z) const;
  // Delta^z from Delta's own eigendecomposition.
  Matrix delta_power(cplx z) const;
  Matrix apply_j(const Matrix& x) const;

 private:
  friend ModularData gns_purify(const states::DensityMatrix&, const Tolerance&);
  explicit ModularData(states::DensityMatrix rho) : rho_(std::move(rho)) {}
  states::DensityMatrix rho_;
  EigenSystem rho_eig_;
  EigenSystem delta_eig_;
  Matrix psi_, delta_, swap_;
  double tomita_error_ = 0.0;
};

// Throws NotFaithful if lambda_min <= rank_tol * lambda_max, VerificationFailed
// if the Tomita relation misses kTomitaTolerance.
ModularData gns_purify(const states::DensityMatrix& rho, const Tolerance& tol = {});

// rho^{-iz} A rho^{iz}; z may be complex.
Matrix modular_flow_at(const ModularData& md, const Matrix& a, cplx z);

struct FlowCheck {
  double route_gap = 0.0;        // reduced route vs Delta route on A (x) I
  double automorphism_gap = 0.0; // alpha(A A^dag) vs alpha(A) alpha(A^dag), alpha(A^dag) vs alpha(A)^dag
};

// alpha_t(A). Throws DimensionMismatch, and VerificationFailed when either
// check exceeds kFlowTolerance.
Matrix modular_flow(const ModularData& md, const Matrix& a, double t, FlowCheck* check = nullptr);

struct KmsEntry {
  double t = 0.0;
  double residual = 0.0;
};

struct KmsReport {
  double beta = 1.0;
  std::vector<KmsEntry> entries;
  double max_residual = 0.0;
};

// |omega(alpha_t(A) B) - omega(B alpha_{t + i beta}(A))| with omega = Tr(rho .).
KmsReport kms_residual(const ModularData& md, const Matrix& a, const Matrix& b, const std::vector<double>& ts,
                       double beta);

// Same with the Heisenberg flow gamma_z(A) = e^{izH} A e^{-izH} of H and any state.
KmsReport kms_residual_dynamics(const states::DensityMatrix& rho, const dynamics::Hamiltonian& h, const Matrix& a,
                                const Matrix& b, const std::vector<double>& ts, double beta);

// e^{-beta H} / Tr e^{-beta H}, evaluated with the spectrum shifted by its extreme value.
states::DensityMatrix gibbs_state(const dynamics::Hamiltonian& h, double beta, const Tolerance& tol = {});

struct InnerImplementation {
  Matrix u;                  // rho^{it}
  double certificate = 0.0;  // max over matrix units |alpha_t(E) - u^dag E u|_max
};
// Throws VerificationFailed if the certificate exceeds kInnerTolerance.
InnerImplementation inner_implementation(const ModularData& md, double t);

struct Cocycle {
  Matrix w;                  // rho1^{-it} rho2^{it}
  double certificate = 0.0;  // max over matrix units |alpha1_t(E) - w alpha2_t(E) w^dag|_max
};
Cocycle cocycle_intertwiner(const ModularData& md1, const ModularData& md2, double t);

json to_json(const KmsReport& r);

}  // namespace qrecon::modular
