#include "runitary/correction.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "runitary/channel.hpp"
#include "runitary/decompose.hpp"
#include "runitary/random.hpp"

namespace runitary {

DilationIsometry dilate(const KrausChannel& ch) {
  check_channel(ch);
  const int r = ch.num_ops();
  DilationIsometry iso;
  iso.d_in = ch.d_in;
  iso.d_out = ch.d_out;
  iso.r = r;
  iso.v = Matrix::Zero(static_cast<Eigen::Index>(ch.d_out) * r, ch.d_in);
  for (int j = 0; j < r; ++j)
    for (int a = 0; a < ch.d_out; ++a) iso.v.row(a * r + j) = ch.ops[j].row(a);
  return iso;
}

CorrectionReport simulate_correction(const KrausChannel& ch, const RuDecomposition& dec,
                                     const std::vector<DensityMatrix>& states, uint64_t seed,
                                     int n_trials, const ToleranceConfig& tol) {
  check_channel(ch, tol);
  if (ch.d_in != ch.d_out)
    throw std::invalid_argument("simulate_correction: requires equal dimensions");
  const int d = ch.d_in;
  if (dec.size() == 0 || states.empty())
    throw std::invalid_argument("simulate_correction: empty decomposition or state list");

  const KrausChannel canonical =
      choi_to_canonical_kraus(kraus_to_choi(ch, tol), tol);
  const int r = canonical.num_ops();
  const int n = dec.size();

  // Recover the measurement vectors: least squares for
  // sqrt(p_i) U_i = sum_j c_ij K_j, closed form by trace orthogonality.
  std::vector<double> knorm(r);
  for (int j = 0; j < r; ++j) knorm[j] = canonical.ops[j].squaredNorm();

  std::vector<Vector> alphas(n, Vector::Zero(r));
  std::vector<Matrix> measured(n);  // A_i = sum_j conj(alpha_ij) K_j
  for (int i = 0; i < n; ++i) {
    const Matrix target = std::sqrt(std::max(0.0, dec.probs[i])) * dec.unitaries[i];
    Matrix fit = Matrix::Zero(d, d);
    for (int j = 0; j < r; ++j) {
      const Complex c =
          (canonical.ops[j].conjugate().cwiseProduct(target)).sum() / knorm[j];
      alphas[i](j) = std::conj(c);
      fit += c * canonical.ops[j];
    }
    if ((fit - target).cwiseAbs().maxCoeff() > tol.eps_eq)
      throw std::invalid_argument(
          "simulate_correction: decomposition is inconsistent with the channel (fit residual)");
    measured[i] = fit;
  }
  Matrix completeness = Matrix::Zero(r, r);
  for (const Vector& a : alphas) completeness.noalias() += a * a.adjoint();
  if ((completeness - Matrix::Identity(r, r)).cwiseAbs().maxCoeff() > tol.eps_eq)
    throw std::invalid_argument(
        "simulate_correction: decomposition is inconsistent with the channel (POVM incomplete)");

  CorrectionReport report;
  report.n_trials = n_trials;
  report.expected_probs = dec.probs;
  report.worst_fidelity = 1.0;
  report.outcome_frequencies.assign(n, 0.0);

  double fidelity_sum = 0.0;
  std::vector<std::vector<double>> weights(states.size(), std::vector<double>(n, 0.0));

  for (size_t s = 0; s < states.size(); ++s) {
    const DensityMatrix& rho = states[s];
    if (rho.mat.rows() != d || rho.mat.cols() != d)
      throw std::invalid_argument("simulate_correction: state dimension mismatch");
    double fid = 0.0;
    for (int i = 0; i < n; ++i) {
      const Matrix cond = measured[i] * rho.mat * measured[i].adjoint();
      const double q = cond.trace().real();
      weights[s][i] = q;
      const double dev = std::abs(q - dec.probs[i]);
      if (dev > report.max_weight_deviation) report.max_weight_deviation = dev;
      if (q < 1e-15) continue;
      const Matrix corrected =
          dec.unitaries[i].adjoint() * cond * dec.unitaries[i];
      // q times the fidelity of the normalized conditional state.
      fid += (rho.mat * corrected).trace().real();
    }
    fidelity_sum += fid;
    if (fid < report.worst_fidelity) report.worst_fidelity = fid;
  }
  report.mean_fidelity = fidelity_sum / static_cast<double>(states.size());

  if (n_trials > 0) {
    std::mt19937_64 rng(mix_seed(seed, 1));
    std::uniform_int_distribution<size_t> pick_state(0, states.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < n_trials; ++t) {
      const std::vector<double>& w = weights[pick_state(rng)];
      double u = unit(rng);
      int outcome = n - 1;
      for (int i = 0; i < n; ++i) {
        u -= w[i];
        if (u <= 0.0) {
          outcome = i;
          break;
        }
      }
      report.outcome_frequencies[outcome] += 1.0;
    }
    for (double& fbin : report.outcome_frequencies) fbin /= n_trials;
  } else {
    // Exact weights averaged over the supplied states.
    for (size_t s = 0; s < states.size(); ++s)
      for (int i = 0; i < n; ++i) report.outcome_frequencies[i] += weights[s][i];
    for (double& fbin : report.outcome_frequencies)
      fbin /= static_cast<double>(states.size());
  }
  return report;
}

}  // namespace runitary
