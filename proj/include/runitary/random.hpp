#pragma once

#include <cstdint>
#include <random>

#include "runitary/types.hpp"

namespace runitary {

// Complex matrix with i.i.d. standard complex Gaussian entries.
Matrix ginibre(int rows, int cols, std::mt19937_64& rng);

// Haar-distributed unitary via QR of a Ginibre matrix with the phases of
// diag(R) absorbed into Q.
Matrix haar_unitary(int d, std::mt19937_64& rng);

// Haar-random pure state (normalized Gaussian vector).
Vector haar_state(int d, std::mt19937_64& rng);

// Uniform sample from the probability simplex (normalized Exp(1) draws).
std::vector<double> sample_simplex(int k, std::mt19937_64& rng);

// Random density matrix GG^dag / Tr[GG^dag].
DensityMatrix random_density(int d, std::mt19937_64& rng);

// Deterministic stream splitter for deriving independent sub-seeds.
uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0);

}  // namespace runitary
