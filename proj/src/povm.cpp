#include "runitary/povm.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "runitary/channel.hpp"

namespace runitary {

namespace {

// Real coordinates of the Hermitian matrix alpha*alpha^dag in an orthonormal
// basis of the r^2-dimensional real space of Hermitian r x r matrices:
// diagonal entries, then sqrt(2)*Re and sqrt(2)*Im of the upper triangle.
RealVector hermitian_coords(const Vector& alpha) {
  const int r = static_cast<int>(alpha.size());
  RealVector x(r * r);
  int idx = 0;
  for (int i = 0; i < r; ++i) x(idx++) = std::norm(alpha(i));
  const double s = std::sqrt(2.0);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const Complex z = alpha(i) * std::conj(alpha(j));
      x(idx++) = s * z.real();
      x(idx++) = s * z.imag();
    }
  return x;
}

RealMatrix coefficient_matrix(const RankOnePovm& p) {
  RealMatrix m(p.r * p.r, p.size());
  for (int i = 0; i < p.size(); ++i) m.col(i) = hermitian_coords(p.vectors[i]);
  return m;
}

constexpr double kSignEps = 1e-12;

}  // namespace

RankOnePovm make_povm(int r, std::vector<Vector> vectors, double prune_eps) {
  if (r < 1) throw std::invalid_argument("povm: dimension must be positive");
  RankOnePovm p;
  p.r = r;
  for (Vector& v : vectors) {
    if (v.size() != r) throw std::invalid_argument("povm: vector length != r");
    if (v.squaredNorm() > prune_eps) p.vectors.push_back(std::move(v));
  }
  if (p.vectors.empty()) throw std::invalid_argument("povm: all elements negligible");
  return p;
}

bool validate_povm(const RankOnePovm& p, const ToleranceConfig& tol) {
  if (p.r < 1 || p.vectors.empty()) return false;
  Matrix acc = Matrix::Zero(p.r, p.r);
  for (const Vector& v : p.vectors) {
    if (v.size() != p.r) return false;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
    acc.noalias() += v * v.adjoint();
  }
  return (acc - Matrix::Identity(p.r, p.r)).cwiseAbs().maxCoeff() <= tol.eps_eq;
}

bool is_extremal(const RankOnePovm& p, const ToleranceConfig& tol) {
  const int n = p.size();
  if (n > p.r * p.r) return false;
  Eigen::JacobiSVD<RealMatrix> svd(coefficient_matrix(p));
  const RealVector sv = svd.singularValues();
  return sv(sv.size() - 1) > tol.eps_rank * sv(0);
}

std::optional<RealVector> find_null_combination(const RankOnePovm& p,
                                                const ToleranceConfig& tol) {
  const int n = p.size();
  const RealMatrix coef = coefficient_matrix(p);
  RealVector c;
  if (n > p.r * p.r) {
    // More elements than the space of Hermitian matrices can hold: a null
    // direction always exists, and the orthogonal complement of the row
    // space is cheap to reach through a QR of the transpose. This path runs
    // once per node of the splitting recursion, so it has to stay light.
    Eigen::ColPivHouseholderQR<RealMatrix> qr(coef.transpose());
    c = qr.householderQ() * RealVector::Unit(n, n - 1);
  } else {
    Eigen::JacobiSVD<RealMatrix> svd(coef, Eigen::ComputeFullV);
    const RealVector sv = svd.singularValues();
    if (sv(sv.size() - 1) > tol.eps_rank * sv(0)) return std::nullopt;
    c = svd.matrixV().col(n - 1);
  }
  int pivot = 0;
  c.cwiseAbs().maxCoeff(&pivot);
  c /= c(pivot);
  return c;
}

SplitOnce extremal_split_once(const RankOnePovm& p, const RealVector& c,
                              const ToleranceConfig& tol) {
  (void)tol;
  const int n = p.size();
  if (c.size() != n) throw std::invalid_argument("split: coefficient length mismatch");

  double t_plus = 0.0, t_minus = 0.0;
  bool has_neg = false, has_pos = false;
  for (int i = 0; i < n; ++i) {
    if (c(i) < -kSignEps) {
      const double t = -1.0 / c(i);
      if (!has_neg || t < t_plus) t_plus = t;
      has_neg = true;
    } else if (c(i) > kSignEps) {
      const double t = 1.0 / c(i);
      if (!has_pos || t < t_minus) t_minus = t;
      has_pos = true;
    }
  }
  if (!has_neg || !has_pos)
    throw std::runtime_error("split: null combination lacks a sign change");

  SplitOnce out;
  out.lambda = t_minus / (t_plus + t_minus);

  std::vector<Vector> p_vecs, q_vecs;
  for (int i = 0; i < n; ++i) {
    const double fp = 1.0 + t_plus * c(i);
    const double fq = 1.0 - t_minus * c(i);
    if (fp > kSignEps) {
      p_vecs.push_back(std::sqrt(fp) * p.vectors[i]);
      out.p_support.push_back(i);
    }
    if (fq > kSignEps) {
      q_vecs.push_back(std::sqrt(fq) * p.vectors[i]);
      out.q_support.push_back(i);
    }
  }
  out.p = make_povm(p.r, std::move(p_vecs), 0.0);
  out.q = make_povm(p.r, std::move(q_vecs), 0.0);
  return out;
}

ExtremalSplit extremal_decompose(const RankOnePovm& p, const ToleranceConfig& tol) {
  struct Node {
    double weight;
    RankOnePovm povm;
    std::vector<int> support;
  };

  std::vector<int> root_support(p.size());
  for (int i = 0; i < p.size(); ++i) root_support[i] = i;

  std::vector<Node> stack;
  stack.push_back(Node{1.0, p, std::move(root_support)});

  ExtremalSplit result;
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();

    auto c = find_null_combination(node.povm, tol);
    if (!c) {
      result.weights.push_back(node.weight);
      result.components.push_back(std::move(node.povm));
      result.support_maps.push_back(std::move(node.support));
      continue;
    }

    SplitOnce split = extremal_split_once(node.povm, *c, tol);
    if (split.p.size() >= node.povm.size() && split.q.size() >= node.povm.size())
      throw std::runtime_error("decompose: split made no progress");

    auto remap = [&node](const std::vector<int>& sub) {
      std::vector<int> out(sub.size());
      for (size_t k = 0; k < sub.size(); ++k) out[k] = node.support[sub[k]];
      return out;
    };
    stack.push_back(Node{node.weight * split.lambda, std::move(split.p), remap(split.p_support)});
    stack.push_back(
        Node{node.weight * (1.0 - split.lambda), std::move(split.q), remap(split.q_support)});
  }
  return result;
}

std::optional<std::vector<double>> check_dice_condition(const KrausChannel& ch,
                                                        const RankOnePovm& p,
                                                        const ToleranceConfig& tol) {
  if (p.r != ch.num_ops())
    throw std::invalid_argument("dice condition: POVM dimension != number of Kraus operators");
  std::vector<double> probs;
  probs.reserve(p.size());
  for (const Vector& alpha : p.vectors) {
    const Matrix m = dual_apply(ch, alpha);
    const double pi = m.trace().real() / ch.d_in;
    if ((m - pi * Matrix::Identity(ch.d_in, ch.d_in)).cwiseAbs().maxCoeff() > tol.eps_eq)
      return std::nullopt;
    probs.push_back(pi);
  }
  return probs;
}

}  // namespace runitary
