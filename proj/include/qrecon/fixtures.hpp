#pragma once

// Single source of truth for the reference objects used by tests, the
// acceptance suite and `qrecon fixtures`.

#include "qrecon/lattice.hpp"
#include "qrecon/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qrecon::fixtures {

// Lattices ----------------------------------------------------------------

lattice::LatticeSpec chain_spec(std::size_t length);  // 0 < c1 < ... < 1, no ortho
lattice::LatticeSpec chain2_spec();                   // {0, 1} with 0' = 1
// Subsets of an n-set ordered by bitmask; "0" and "1" for empty and full,
// complement as ortho.
lattice::LatticeSpec boolean_spec(std::size_t n);
// MO_n: 0 < a1, a1_perp, ..., an, an_perp < 1.
lattice::LatticeSpec mo_spec(std::size_t n);
lattice::LatticeSpec mo2_spec();
// Benzene ring: 0 < a < b < 1, 0 < b_perp < a_perp < 1.
lattice::LatticeSpec o6_spec();
// Pentagon: 0 < a < c < 1, 0 < b < 1.
lattice::LatticeSpec n5_spec();
// Diamond: 0 < a, b, c < 1 (no ortho).
lattice::LatticeSpec m3_spec();
// 2^2 with the identity map posing as an orthocomplement.
lattice::LatticeSpec boolean2_identity_ortho_spec();

// Named lattice corpus used by the invariant suites.
std::vector<std::pair<std::string, lattice::FiniteLattice>> lattice_corpus();

// Matrices ----------------------------------------------------------------

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
// (|000> + |111>)/sqrt2 as an 8 x 1 column.
Matrix ghz_vector();
Matrix ghz_state();
// The 6 x 6 projections E and F generating C*-independent, non-commuting
// algebras.
Matrix cbh_e();
Matrix cbh_f();
Matrix swap_gate();   // qubit (x) qubit
Matrix cnot_gate();   // first qubit controls the second
// exp(-i theta SWAP) = cos(theta) I - i sin(theta) SWAP.
Matrix partial_swap(double theta);

}  // namespace qrecon::fixtures
