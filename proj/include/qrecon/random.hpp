#pragma once

#include "qrecon/matrix.hpp"

#include <cstdint>
#include <random>

namespace qrecon {

// Every randomized routine takes an explicit engine; there is no global RNG.
using Rng = std::mt19937_64;

enum class ScalarField { Real, Complex };

Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng, ScalarField field = ScalarField::Complex);
Matrix random_unit_vector(std::size_t d, Rng& rng, ScalarField field = ScalarField::Complex);
// Haar-distributed unitary (orthogonal for the real field): QR of a Gaussian
// matrix with the phase of R's diagonal fixed.
Matrix random_unitary(std::size_t d, Rng& rng, ScalarField field = ScalarField::Complex);
Matrix random_hermitian(std::size_t d, Rng& rng);
// Full-rank density matrix G G^dag / Tr with G Gaussian (Ginibre ensemble);
// faithful with probability one.
Matrix random_density(std::size_t d, Rng& rng);

}  // namespace qrecon
