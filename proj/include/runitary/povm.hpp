#pragma once

#include <optional>
#include <vector>

#include "runitary/types.hpp"

namespace runitary {

// Rank-one POVM on C^r: elements |alpha_i><alpha_i| with the weight encoded
// in the vector norm. Vectors of negligible norm are pruned on construction
// via make_povm.
struct RankOnePovm {
  int r = 0;
  std::vector<Vector> vectors;

  int size() const { return static_cast<int>(vectors.size()); }
};

RankOnePovm make_povm(int r, std::vector<Vector> vectors, double prune_eps = 1e-12);

// Convex decomposition of a rank-one POVM into extremal components. Each
// component's elements are nonnegative multiples of the originals;
// support_maps[k] holds the original index of each surviving element.
struct ExtremalSplit {
  std::vector<double> weights;
  std::vector<RankOnePovm> components;
  std::vector<std::vector<int>> support_maps;
};

// Completeness sum_i alpha_i alpha_i^dag = I_r within tol.eps_eq.
bool validate_povm(const RankOnePovm& p, const ToleranceConfig& tol = {});

// A rank-one POVM is extremal iff the operators {alpha_i alpha_i^dag} are
// linearly independent over the reals; decided by the singular values of the
// r^2 x N real coefficient matrix. Always false for N > r^2.
bool is_extremal(const RankOnePovm& p, const ToleranceConfig& tol = {});

// Real coefficients c (|c|_inf = 1) with sum_i c_i alpha_i alpha_i^dag = 0,
// or nullopt iff the POVM is extremal. Picks the right singular vector of
// the smallest singular value.
std::optional<RealVector> find_null_combination(const RankOnePovm& p,
                                                const ToleranceConfig& tol = {});

struct SplitOnce {
  double lambda = 0.0;
  RankOnePovm p;
  RankOnePovm q;
  std::vector<int> p_support;
  std::vector<int> q_support;
};

// One convex split p = lambda*P + (1-lambda)*Q along a null combination c.
// Each branch loses at least one element. Throws std::runtime_error if c
// has no positive or no negative entry.
SplitOnce extremal_split_once(const RankOnePovm& p, const RealVector& c,
                              const ToleranceConfig& tol = {});

// Recursive binary splitting until every leaf is extremal. Every component
// ends with at most r^2 elements.
ExtremalSplit extremal_decompose(const RankOnePovm& p, const ToleranceConfig& tol = {});

// Probabilities p_i with dual_apply(ch, alpha_i) = p_i * I for every element,
// or nullopt if any element fails. Requires p.r == ch.num_ops().
std::optional<std::vector<double>> check_dice_condition(const KrausChannel& ch,
                                                        const RankOnePovm& p,
                                                        const ToleranceConfig& tol = {});

}  // namespace runitary
