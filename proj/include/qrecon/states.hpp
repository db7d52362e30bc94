#pragma once

#include "qrecon/json_io.hpp"
#include "qrecon/linalg.hpp"
#include "qrecon/random.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace qrecon::states {

// Hermitian, eigenvalues >= -10 eq_tol, unit trace. Throws NotADensityMatrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, const Tolerance& tol = {});
  const Matrix& mat() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

// Hermitian with P^2 = P within 10 eq_tol. Throws NotAProjector.
class Projector {
 public:
  explicit Projector(Matrix m, const Tolerance& tol = {});
  // |v><v| / <v|v>.
  static Projector rank_one(const Matrix& v);
  const Matrix& mat() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }
  std::size_t rank() const;

 private:
  Matrix m_;
};

struct FrameSample {
  Projector projector;
  double value = 0.0;
};

// Re Tr(rho P), clamped into [0, 1] when within eq_tol of it.
// Throws DimensionMismatch, OutOfRange.
double born(const DensityMatrix& rho, const Projector& p, const Tolerance& tol = {});

// d orthogonal rank-one projectors summing to I (columns of a Haar unitary).
std::vector<Projector> random_frame(std::size_t d, std::uint64_t seed);

// Orthonormal basis of the real space of d x d Hermitian matrices under
// Tr(AB): I/sqrt(d) first, then symmetric, antisymmetric and diagonal
// generalized Gell-Mann matrices.
std::vector<Matrix> hermitian_basis(std::size_t d);

inline constexpr std::string_view kGleasonHypothesis =
    "Gleason's theorem requires dimension >= 3; in dimension 2 frame functions need not be of the form "
    "Tr(rho P), so recovery is refused";

// Eigenvalue floor below which a least-squares solution is rejected instead
// of being repaired.
inline constexpr double kMaxPsdRepair = 1e-6;

struct GleasonResult {
  DensityMatrix rho;
  double residual = 0.0;  // max_k |Tr(rho P_k) - f_k|
  double repair = 0.0;    // max entry change from PSD clipping (0 if none)
};

// Least-squares density matrix reproducing the frame-function samples.
// Throws DimensionTooSmall (d < 3), InsufficientSpan, InfeasibleState.
GleasonResult gleason_recover(const std::vector<FrameSample>& samples, std::size_t d, const Tolerance& tol = {});

struct AuditResult {
  double max_deviation = 0.0;     // max over frames of |born(rho, P_in_frame) - born(rho, P)|
  double max_frame_defect = 0.0;  // max over frames of |sum_k P_k - I|_max
};

// Completes the rank-one projector p to `trials` random frames (p placed at
// a random slot) and compares the probability assigned to p inside each
// frame with the frame-free value.
AuditResult noncontextuality_audit(const DensityMatrix& rho, const Projector& p, std::size_t trials,
                                   std::uint64_t seed, const Tolerance& tol = {});

json to_json(const FrameSample& s);
FrameSample sample_from_json(const json& j, const Tolerance& tol = {});

}  // namespace qrecon::states
