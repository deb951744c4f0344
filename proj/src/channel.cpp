#include "runitary/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace runitary {

namespace {

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

Vector flatten_row_major(const Matrix& k) {
  const int rows = static_cast<int>(k.rows());
  const int cols = static_cast<int>(k.cols());
  Vector w(rows * cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) w(i * cols + j) = k(i, j);
  return w;
}

Matrix unflatten_row_major(const Vector& w, int rows, int cols) {
  if (w.size() != static_cast<Eigen::Index>(rows) * cols)
    throw std::invalid_argument("unflatten_row_major: size mismatch");
  Matrix k(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) k(i, j) = w(i * cols + j);
  return k;
}

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

bool is_hermitian(const Matrix& m, double eps) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= eps;
}

bool is_psd(const Matrix& m, double eps) {
  if (m.rows() != m.cols()) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -eps;
}

bool is_valid_density(const DensityMatrix& rho, const ToleranceConfig& tol) {
  const Matrix& m = rho.mat;
  if (m.rows() == 0 || m.rows() != m.cols()) return false;
  if (!all_finite(m)) return false;
  if (!is_hermitian(m, tol.eps_eq)) return false;
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol.eps_eq) return false;
  return is_psd(m, tol.eps_psd);
}

bool is_trace_preserving(const KrausChannel& ch, double eps) {
  Matrix acc = Matrix::Zero(ch.d_in, ch.d_in);
  for (const Matrix& k : ch.ops) acc += k.adjoint() * k;
  return (acc - Matrix::Identity(ch.d_in, ch.d_in)).cwiseAbs().maxCoeff() <= eps;
}

void check_channel(const KrausChannel& ch, const ToleranceConfig& tol) {
  if (ch.d_in < 1 || ch.d_out < 1)
    throw std::invalid_argument("channel: dimensions must be positive");
  if (ch.ops.empty()) throw std::invalid_argument("channel: needs at least one Kraus operator");
  for (const Matrix& k : ch.ops) {
    if (k.rows() != ch.d_out || k.cols() != ch.d_in)
      throw std::invalid_argument("channel: Kraus operator shape mismatch");
    if (!all_finite(k)) throw std::invalid_argument("channel: non-finite entries");
  }
  if (!is_trace_preserving(ch, tol.eps_eq))
    throw std::invalid_argument("channel: completeness sum_j K_j^dag K_j = I violated");
}

Matrix choi_trace_out_output(const ChoiOperator& r) {
  Matrix acc = Matrix::Zero(r.d_in, r.d_in);
  for (int a = 0; a < r.d_out; ++a)
    for (int i = 0; i < r.d_in; ++i)
      for (int j = 0; j < r.d_in; ++j) acc(i, j) += r.mat(a * r.d_in + i, a * r.d_in + j);
  return acc;
}

Matrix choi_trace_out_reference(const ChoiOperator& r) {
  Matrix acc = Matrix::Zero(r.d_out, r.d_out);
  for (int i = 0; i < r.d_in; ++i)
    for (int a = 0; a < r.d_out; ++a)
      for (int b = 0; b < r.d_out; ++b) acc(a, b) += r.mat(a * r.d_in + i, b * r.d_in + i);
  return acc;
}

void check_choi(const ChoiOperator& r, const ToleranceConfig& tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(r.d_out) * r.d_in;
  if (r.d_in < 1 || r.d_out < 1 || r.mat.rows() != n || r.mat.cols() != n)
    throw std::invalid_argument("choi: shape mismatch");
  if (!all_finite(r.mat)) throw std::invalid_argument("choi: non-finite entries");
  if (!is_hermitian(r.mat, tol.eps_eq)) throw std::invalid_argument("choi: not Hermitian");
  if (!is_psd(r.mat, tol.eps_psd)) throw std::invalid_argument("choi: not positive semidefinite");
  if (std::abs(r.mat.trace() - Complex(r.d_in, 0.0)) > tol.eps_eq * r.d_in)
    throw std::invalid_argument("choi: trace != d_in");
  const Matrix pt = choi_trace_out_output(r);
  if ((pt - Matrix::Identity(r.d_in, r.d_in)).cwiseAbs().maxCoeff() > tol.eps_eq)
    throw std::invalid_argument("choi: partial trace over output factor != identity");
}

ChoiOperator kraus_to_choi(const KrausChannel& ch, const ToleranceConfig& tol) {
  check_channel(ch, tol);
  const int n = ch.d_out * ch.d_in;
  Matrix r = Matrix::Zero(n, n);
  for (const Matrix& k : ch.ops) {
    const Vector w = flatten_row_major(k);
    r.noalias() += w * w.adjoint();
  }
  return ChoiOperator{ch.d_in, ch.d_out, std::move(r)};
}

KrausChannel choi_to_canonical_kraus(const ChoiOperator& r, const ToleranceConfig& tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(r.d_out) * r.d_in;
  if (r.d_in < 1 || r.d_out < 1 || r.mat.rows() != n || r.mat.cols() != n)
    throw std::invalid_argument("choi: shape mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(r.mat));
  if (es.info() != Eigen::Success) throw std::runtime_error("choi: eigendecomposition failed");
  const RealVector evals = es.eigenvalues();
  const double mu_max = evals.maxCoeff();
  if (evals.minCoeff() < -tol.eps_psd)
    throw std::invalid_argument("choi: not positive semidefinite");
  if (mu_max <= 0.0) throw std::invalid_argument("choi: zero operator");

  KrausChannel out;
  out.d_in = r.d_in;
  out.d_out = r.d_out;
  // Largest eigenvalue first.
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    const double mu = evals(j);
    if (mu <= tol.eps_rank * mu_max) continue;
    out.ops.push_back(std::sqrt(mu) *
                      unflatten_row_major(es.eigenvectors().col(j), r.d_out, r.d_in));
  }
  return out;
}

int choi_rank(const ChoiOperator& r, const ToleranceConfig& tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(r.d_out) * r.d_in;
  if (r.d_in < 1 || r.d_out < 1 || r.mat.rows() != n || r.mat.cols() != n)
    throw std::invalid_argument("choi: shape mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(r.mat), Eigen::EigenvaluesOnly);
  const RealVector evals = es.eigenvalues();
  const double mu_max = evals.maxCoeff();
  if (mu_max <= 0.0) throw std::invalid_argument("choi: zero operator");
  int rank = 0;
  for (Eigen::Index j = 0; j < n; ++j)
    if (evals(j) > tol.eps_rank * mu_max) ++rank;
  return rank;
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.mat.rows() != ch.d_in || rho.mat.cols() != ch.d_in)
    throw std::invalid_argument("apply_channel: dimension mismatch");
  Matrix out = Matrix::Zero(ch.d_out, ch.d_out);
  for (const Matrix& k : ch.ops) out.noalias() += k * rho.mat * k.adjoint();
  return DensityMatrix{hermitian_part(out)};
}

bool is_unital(const KrausChannel& ch, const ToleranceConfig& tol) {
  if (ch.d_in != ch.d_out)
    throw std::invalid_argument("is_unital: requires equal input and output dimensions");
  Matrix acc = Matrix::Zero(ch.d_out, ch.d_out);
  for (const Matrix& k : ch.ops) acc += k * k.adjoint();
  return (acc - Matrix::Identity(ch.d_out, ch.d_out)).cwiseAbs().maxCoeff() <= tol.eps_eq;
}

DensityMatrix complementary_apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.mat.rows() != ch.d_in || rho.mat.cols() != ch.d_in)
    throw std::invalid_argument("complementary_apply: dimension mismatch");
  const int m = ch.num_ops();
  Matrix out(m, m);
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) out(j, l) = (ch.ops[j] * rho.mat * ch.ops[l].adjoint()).trace();
  return DensityMatrix{hermitian_part(out)};
}

Matrix dual_apply(const KrausChannel& ch, const Vector& alpha) {
  if (alpha.size() != ch.num_ops())
    throw std::invalid_argument("dual_apply: coefficient length != number of Kraus operators");
  Matrix a = Matrix::Zero(ch.d_out, ch.d_in);
  for (int j = 0; j < ch.num_ops(); ++j) a += std::conj(alpha(j)) * ch.ops[j];
  return a.adjoint() * a;
}

}  // namespace runitary
