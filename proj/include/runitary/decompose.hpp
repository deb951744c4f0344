#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "runitary/povm.hpp"
#include "runitary/types.hpp"

namespace runitary {

struct SearchConfig {
  // Candidate POVM cardinalities; empty means r, r+1, ..., r^2.
  std::vector<int> n_schedule;
  int restarts = 20;
  int max_iters = 5000;
  double step = 0.1;
  double obj_tol = 1e-12;
  uint64_t seed = 0;
};

enum class SearchStatus { found, not_found, not_unital };

struct SearchReport {
  SearchStatus status = SearchStatus::not_found;
  std::optional<RuDecomposition> decomposition;
  int cardinality_bound_low = 0;   // rank R_E
  int cardinality_bound_high = 0;  // (rank R_E)^2
  std::vector<double> objective_trace;
  double entropy_bits = 0.0;
  // Frobenius distance between the input Choi and the Choi of the best
  // candidate decomposition (also filled for not_found).
  double residual = std::numeric_limits<double>::infinity();
  double best_objective = std::numeric_limits<double>::infinity();
};

struct EntropyBounds {
  double h_bits = 0.0;
  double bound_rank = 0.0;
  double bound_dim = 0.0;
  bool ok = false;
};

// Kraus form {sqrt(p_i) U_i} of a decomposition.
KrausChannel to_kraus(const RuDecomposition& dec);

double shannon_entropy_bits(const std::vector<double>& probs);

// Bloch matrix T[a,b] = Tr[sigma_a E(sigma_b)] / 2 over a,b in {x,y,z};
// requires a qubit channel.
RealMatrix bloch_matrix(const KrausChannel& ch);

// SU(2) element V with Tr[sigma_a V sigma_b V^dag]/2 = rot[a,b], scalar
// quaternion part fixed nonnegative.
Matrix su2_from_so3(const RealMatrix& rot);

// Exact Pauli-form decomposition of a unital qubit channel: sign-adjusted
// SVD of the Bloch matrix, SU(2) lifts of both rotation factors, and the
// probabilities read off the diagonal multipliers. Throws on non-unital or
// non-qubit input.
RuDecomposition pauli_decompose_qubit(const KrausChannel& ch, const ToleranceConfig& tol = {});

// Objective and Euclidean gradient of the mixing-matrix search. M is r x N
// with rows orthonormal (columns are the POVM vectors); kraus holds the
// canonical Kraus operators. The gradient is packed so that entry (j,i)
// equals d f / d Re(M(j,i)) + i * d f / d Im(M(j,i)).
double search_objective(const Matrix& m, const std::vector<Matrix>& kraus);
Matrix search_gradient(const Matrix& m, const std::vector<Matrix>& kraus);

// Multi-start projected gradient search over co-isometries M (M M^dag = I_r)
// for a POVM satisfying the classical-dice condition; each success converts
// directly to a random-unitary decomposition.
SearchReport search_decomposition(const KrausChannel& ch, const SearchConfig& cfg = {},
                                  const ToleranceConfig& tol = {});

// Front-end dispatch: qubit channels go through the exact Pauli form, higher
// dimensions through the search. Report shape is identical in both cases
// (the closed form leaves the objective trace empty).
SearchReport decompose_channel(const KrausChannel& ch, const SearchConfig& cfg = {},
                               const ToleranceConfig& tol = {});

// Convert a dice-satisfying POVM to the decomposition it induces:
// A_i = sum_j conj(alpha_ij) K_j, p_i = Tr[A_i^dag A_i]/d, U_i the polar
// unitary factor of A_i.
RuDecomposition povm_to_decomposition(const KrausChannel& ch, const RankOnePovm& p,
                                      const ToleranceConfig& tol = {});

// Shrink a dice-satisfying POVM with more than r^2 elements: extremal
// decomposition, then conversion of the heaviest component. Throws if the
// dice condition fails.
RuDecomposition reduce_cardinality(const KrausChannel& ch, const RankOnePovm& p,
                                   const ToleranceConfig& tol = {});

// H(p) in bits against 2*log2(rank R_E) and 4*log2(d).
EntropyBounds entropy_and_bounds(const RuDecomposition& dec, const ChoiOperator& r,
                                 const ToleranceConfig& tol = {});

// Test-instance generator: flat-simplex probabilities and K Haar unitaries,
// deterministic per seed. Returns the channel together with the ground-truth
// decomposition.
std::pair<KrausChannel, RuDecomposition> generate_random_ru_channel(int d, int k, uint64_t seed);

}  // namespace runitary
