#pragma once

#include <cstdint>
#include <random>

#include "covobs/linalg.hpp"

namespace covobs {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// iid standard complex Gaussian entries.
Mat random_gaussian_matrix(Rng& rng, int rows, int cols);

/// Haar-ish unitary via QR of a Gaussian matrix, phase-fixed so the result
/// is a deterministic function of the draw.
Mat random_unitary(Rng& rng, int n);

/// rows×cols matrix with orthonormal columns (rows >= cols).
Mat random_isometry(Rng& rng, int rows, int cols);

/// normalized random state vector.
Vec random_state(Rng& rng, int n);

}  // namespace covobs
