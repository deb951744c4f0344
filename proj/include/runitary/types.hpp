#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace runitary {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Numerical tolerances shared across the library. eps_rank is relative to
// the largest eigenvalue/singular value of the operator being truncated.
struct ToleranceConfig {
  double eps_eq = 1e-9;
  double eps_psd = 1e-9;
  double eps_rank = 1e-9;
  double eps_unitary = 1e-8;
};

struct DensityMatrix {
  Matrix mat;
  int dim() const { return static_cast<int>(mat.rows()); }
};

// A channel as a list of Kraus operators, each d_out x d_in.
// Trace preservation (sum_j K_j^dag K_j = I) is checked by the operations
// that require it, not at construction, so invalid inputs can be built for
// error-path tests.
struct KrausChannel {
  int d_in = 0;
  int d_out = 0;
  std::vector<Matrix> ops;

  int num_ops() const { return static_cast<int>(ops.size()); }
};

// Choi operator on (output x input), basis element (a,i) at flat index
// a*d_in + i; the channel acts on the first tensor factor.
struct ChoiOperator {
  int d_in = 0;
  int d_out = 0;
  Matrix mat;
};

// Mixing probabilities p_i and unitaries U_i of a random-unitary channel
// sum_i p_i U_i rho U_i^dag.
struct RuDecomposition {
  std::vector<double> probs;
  std::vector<Matrix> unitaries;

  int size() const { return static_cast<int>(probs.size()); }
};

}  // namespace runitary
