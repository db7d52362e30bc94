#pragma once

// Closed subspaces of a finite-dimensional inner-product space and the lattice
// operations on them. Subspaces are compared through their orthogonal
// projectors, never through frames (frames are gauge dependent).

#include "qrecon/json_io.hpp"
#include "qrecon/lattice.hpp"
#include "qrecon/linalg.hpp"
#include "qrecon/random.hpp"

#include <optional>
#include <vector>

namespace qrecon::subspaces {

class Subspace {
 public:
  // `frame` must be ambient_dim x k with orthonormal columns (k = 0 is the
  // zero subspace). Throws DimensionMismatch / InvalidInput.
  Subspace(std::size_t ambient_dim, Matrix frame, const Tolerance& tol = {});

  static Subspace zero(std::size_t ambient_dim);
  static Subspace whole(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return frame_.cols(); }
  bool is_zero() const noexcept { return dim() == 0; }
  const Matrix& frame() const noexcept { return frame_; }
  const Matrix& projector() const noexcept { return projector_; }

 private:
  std::size_t ambient_dim_;
  Matrix frame_;
  Matrix projector_;
};

// Span of the given column vectors; rank decided by tol.rank_tol.
Subspace from_spanning(const std::vector<Matrix>& vectors, std::size_t ambient_dim, const Tolerance& tol = {});
// Span of the columns of `m`.
Subspace from_columns(const Matrix& m, const Tolerance& tol = {});

// Intersection: eigenvectors of (P_x + P_y)/2 with eigenvalue >= 1 - rank_tol.
Subspace meet(const Subspace& x, const Subspace& y, const Tolerance& tol = {});
// Span of both frames.
Subspace join(const Subspace& x, const Subspace& y, const Tolerance& tol = {});
Subspace ortho(const Subspace& x, const Tolerance& tol = {});
// x <= y iff meet(x, y) = x.
bool leq(const Subspace& x, const Subspace& y, const Tolerance& tol = {});
// |P_x - P_y|_max <= 10 eq_tol.
bool equal(const Subspace& x, const Subspace& y, const Tolerance& tol = {});

struct GeneratedLattice {
  lattice::FiniteLattice lattice;
  // elements[i] is the subspace behind lattice element i.
  std::vector<Subspace> elements;
};

// Closes {0, V} u family under meet, join and ortho. Elements are ordered by
// dimension, then discovery order; named "0", "1", "g<k>" (k-th family
// member) and "x<k>". Throws ClosureBudgetExceeded past `budget` elements.
GeneratedLattice generate_lattice(const std::vector<Subspace>& family, std::size_t budget,
                                  const Tolerance& tol = {});

struct Relevance {
  bool relevant = false;
  // A unit vector in q2 ^ q1' when irrelevant.
  std::optional<Matrix> witness;
};

// q2 is relevant to q1 iff q2 ^ q1' = 0.
Relevance is_relevant(const Subspace& q2, const Subspace& q1, const Tolerance& tol = {});

Subspace random_subspace(std::size_t ambient_dim, std::size_t k, Rng& rng,
                         ScalarField field = ScalarField::Complex);

// Matrix JSON of the frame plus "ambient_dim".
json to_json(const Subspace& s);
// Columns need not be orthonormal; they are re-spanned.
Subspace from_json(const json& j, const Tolerance& tol = {});

}  // namespace qrecon::subspaces
