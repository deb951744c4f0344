#pragma once

#include <cstdint>
#include <vector>

#include "runitary/types.hpp"

namespace runitary {

// Stinespring isometry V: d_in -> d_out * r with V|psi> = sum_j K_j|psi> (x) |j>,
// joint basis |a>(x)|j> at flat index a*r + j.
struct DilationIsometry {
  int d_in = 0;
  int d_out = 0;
  int r = 0;
  Matrix v;
};

struct CorrectionReport {
  int n_trials = 0;
  double worst_fidelity = 0.0;
  double mean_fidelity = 0.0;
  // Largest deviation |Tr[(I (x) |alpha_i><alpha_i|) V rho V^dag] - p_i| seen
  // over all states and outcomes.
  double max_weight_deviation = 0.0;
  std::vector<double> outcome_frequencies;
  std::vector<double> expected_probs;
};

DilationIsometry dilate(const KrausChannel& ch);

// Environment-assisted correction run: dilate with the canonical Kraus,
// measure the ancilla with the POVM recovered from dec, undo with U_i^dag,
// and record fidelities. States are assumed pure; fidelity is
// Tr[rho_in rho_corrected]. n_trials > 0 additionally samples outcome
// frequencies under the seed; n_trials == 0 reports the exact weights.
CorrectionReport simulate_correction(const KrausChannel& ch, const RuDecomposition& dec,
                                     const std::vector<DensityMatrix>& states, uint64_t seed,
                                     int n_trials = 0, const ToleranceConfig& tol = {});

}  // namespace runitary
