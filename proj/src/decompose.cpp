#include "runitary/decompose.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "runitary/channel.hpp"
#include "runitary/random.hpp"

namespace runitary {

namespace {

const Matrix& pauli(int a) {
  static const Matrix s[4] = {
      (Matrix(2, 2) << 1, 0, 0, 1).finished(),
      (Matrix(2, 2) << 0, 1, 1, 0).finished(),
      (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Matrix(2, 2) << 1, 0, 0, -1).finished(),
  };
  return s[a];
}

// Nearest unitary in Frobenius norm.
Matrix polar_unitary(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Project M back onto the co-isometry set {M : M M^dag = I_r} via the polar
// factor (M M^dag)^{-1/2} M.
Matrix retract_rows(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m * m.adjoint());
  const RealVector ev = es.eigenvalues().cwiseMax(1e-300);
  return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().adjoint() * m;
}

// Component of the packed gradient tangent to the constraint set at M.
Matrix tangent_project(const Matrix& g, const Matrix& m) {
  const Matrix s = g * m.adjoint();
  return g - 0.5 * (s + s.adjoint()) * m;
}

double real_inner(const Matrix& a, const Matrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

std::vector<Matrix> mixed_ops(const Matrix& m, const std::vector<Matrix>& kraus) {
  const int r = static_cast<int>(m.rows());
  const int n = static_cast<int>(m.cols());
  std::vector<Matrix> a(n, Matrix::Zero(kraus[0].rows(), kraus[0].cols()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) a[i] += std::conj(m(j, i)) * kraus[j];
  return a;
}

struct MinimizeResult {
  Matrix m;
  double f = 0.0;
  int iters = 0;
};

// Gradient descent on the co-isometry set: Barzilai-Borwein steps, polar
// retraction, nonmonotone backtracking. Runs until f drops below f_floor,
// the iteration cap, or a stall (relative progress under 1% per window).
MinimizeResult minimize_objective(Matrix m, const std::vector<Matrix>& kraus, int max_iters,
                                  double step0, double f_floor) {
  constexpr double kArmijo = 1e-4;
  constexpr int kWindow = 10;
  constexpr int kStallWindow = 250;

  double f = search_objective(m, kraus);
  Matrix g = tangent_project(search_gradient(m, kraus), m);
  double step = step0;

  std::deque<double> recent{f};
  double stall_ref = f;
  int iters = 0;

  for (; iters < max_iters && f > f_floor; ++iters) {
    const double gnorm2 = real_inner(g, g);
    if (gnorm2 < 1e-32) break;
    const double fmax = *std::max_element(recent.begin(), recent.end());

    double t = step;
    Matrix m_new;
    double f_new = f;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      m_new = retract_rows(m - t * g);
      f_new = search_objective(m_new, kraus);
      if (f_new <= fmax - kArmijo * t * gnorm2) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;

    const Matrix g_new = tangent_project(search_gradient(m_new, kraus), m_new);
    const Matrix s = m_new - m;
    const Matrix y = g_new - g;
    const double sy = real_inner(s, y);
    step = sy > 1e-300 ? std::clamp(real_inner(s, s) / sy, 1e-10, 1e3) : step0;

    m = std::move(m_new);
    g = g_new;
    f = f_new;
    recent.push_back(f);
    if (static_cast<int>(recent.size()) > kWindow) recent.pop_front();

    if ((iters + 1) % kStallWindow == 0) {
      if (f > 0.99 * stall_ref) break;
      stall_ref = f;
    }
  }
  return MinimizeResult{std::move(m), f, iters};
}

// Norm-preserving real coordinates of a Hermitian matrix: diagonal, then
// sqrt(2) * (Re, Im) of the upper triangle.
void pack_hermitian(const Matrix& x, RealVector& out, int offset) {
  const int d = static_cast<int>(x.rows());
  int idx = offset;
  for (int a = 0; a < d; ++a) out(idx++) = x(a, a).real();
  const double s = std::sqrt(2.0);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      out(idx++) = s * x(a, b).real();
      out(idx++) = s * x(a, b).imag();
    }
}

// Off-manifold residual vector: the traceless parts of A_i^dag A_i stacked
// per element, followed by M M^dag - I. Its squared norm equals the search
// objective plus the constraint violation.
RealVector dice_residual(const Matrix& m, const std::vector<Matrix>& kraus) {
  const int r = static_cast<int>(m.rows());
  const int n = static_cast<int>(m.cols());
  const int d = static_cast<int>(kraus[0].rows());
  const std::vector<Matrix> a = mixed_ops(m, kraus);
  RealVector f(n * d * d + r * r);
  for (int i = 0; i < n; ++i) {
    Matrix s = a[i].adjoint() * a[i];
    s.diagonal().array() -= s.trace().real() / d;
    pack_hermitian(s, f, i * d * d);
  }
  Matrix c = m * m.adjoint();
  c.diagonal().array() -= 1.0;
  pack_hermitian(c, f, n * d * d);
  return f;
}

RealMatrix dice_jacobian(const Matrix& m, const std::vector<Matrix>& kraus) {
  const int r = static_cast<int>(m.rows());
  const int n = static_cast<int>(m.cols());
  const int d = static_cast<int>(kraus[0].rows());
  const std::vector<Matrix> a = mixed_ops(m, kraus);
  const int rows = n * d * d + r * r;
  RealMatrix jac = RealMatrix::Zero(rows, 2 * r * n);
  RealVector block_s(d * d), block_c(r * r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j)
      for (int part = 0; part < 2; ++part) {
        const int v = 2 * (i * r + j) + part;
        // A_i = sum_j conj(M(j,i)) K_j, so dA/dRe = K_j and dA/dIm = -i K_j
        const Matrix da = part == 0 ? kraus[j] : Matrix(Complex(0, -1) * kraus[j]);
        Matrix ds = da.adjoint() * a[i] + a[i].adjoint() * da;
        ds.diagonal().array() -= ds.trace().real() / d;
        pack_hermitian(ds, block_s, 0);
        jac.block(i * d * d, v, d * d, 1) = block_s;

        const Complex w = part == 0 ? Complex(1, 0) : Complex(0, 1);
        Matrix dc = Matrix::Zero(r, r);
        for (int l = 0; l < r; ++l) {
          dc(j, l) += w * std::conj(m(l, i));
          dc(l, j) += std::conj(w) * m(l, i);
        }
        pack_hermitian(dc, block_c, 0);
        jac.block(n * d * d, v, r * r, 1) = block_c;
      }
  return jac;
}

// Step of min ||J d + res||^2 + lambda ||d||^2 via QR on the stacked system,
// which keeps the conditioning of J instead of squaring it.
RealVector solve_damped(const RealMatrix& jac, const RealVector& res, double lambda) {
  const int rows = static_cast<int>(jac.rows());
  const int cols = static_cast<int>(jac.cols());
  RealMatrix a(rows + cols, cols);
  a.topRows(rows) = jac;
  a.bottomRows(cols) = std::sqrt(lambda) * RealMatrix::Identity(cols, cols);
  RealVector b = RealVector::Zero(rows + cols);
  b.head(rows) = -res;
  return a.colPivHouseholderQr().solve(b);
}

// Levenberg-Marquardt on the stacked residual; quadratic convergence takes
// a near-solution iterate from the gradient phase down to machine precision,
// which the first-order method cannot reach in any reasonable iteration
// budget. Damping is scaled by the residual norm so it vanishes at the right
// rate near a solution even though the per-element phase freedoms keep the
// Jacobian rank deficient. Ends with an exact retraction onto the
// co-isometry set.
MinimizeResult polish_mixing(Matrix m, const std::vector<Matrix>& kraus, int max_iters,
                             double f_floor) {
  const int r = static_cast<int>(m.rows());
  const int n = static_cast<int>(m.cols());
  RealVector res = dice_residual(m, kraus);
  double f = res.squaredNorm();
  double mu = 1.0;
  int iters = 0;
  // A start outside any basin makes the damped step crawl along a valley;
  // demand a decade per check window so those attempts fail fast while
  // convergent ones sail through.
  constexpr int kCheckEvery = 10;
  double crawl_ref = f;
  for (; iters < max_iters && f > f_floor; ++iters) {
    if (iters > 0 && iters % kCheckEvery == 0) {
      if (f > 0.3 * crawl_ref) break;
      crawl_ref = f;
    }
    const RealMatrix jac = dice_jacobian(m, kraus);
    bool accepted = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      const RealVector delta = solve_damped(jac, res, mu * std::sqrt(f));
      Matrix m_new = m;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) {
          const int v = 2 * (i * r + j);
          m_new(j, i) += Complex(delta(v), delta(v + 1));
        }
      const RealVector res_new = dice_residual(m_new, kraus);
      const double f_new = res_new.squaredNorm();
      if (f_new < f) {
        m = std::move(m_new);
        res = res_new;
        f = f_new;
        mu = std::max(mu / 4.0, 1e-10);
        accepted = true;
        break;
      }
      mu *= 4.0;
    }
    if (!accepted) break;
  }
  Matrix mr = retract_rows(m);
  const double f_manifold = search_objective(mr, kraus);
  return MinimizeResult{std::move(mr), f_manifold, iters};
}

RankOnePovm povm_from_mixing(const Matrix& m) {
  std::vector<Vector> vecs;
  vecs.reserve(m.cols());
  for (Eigen::Index i = 0; i < m.cols(); ++i) vecs.push_back(m.col(i));
  return make_povm(static_cast<int>(m.rows()), std::move(vecs));
}

double choi_distance(const ChoiOperator& a, const ChoiOperator& b) {
  return (a.mat - b.mat).norm();
}

}  // namespace

KrausChannel to_kraus(const RuDecomposition& dec) {
  if (dec.size() == 0 || dec.unitaries.empty())
    throw std::invalid_argument("decomposition: empty");
  KrausChannel ch;
  ch.d_in = ch.d_out = static_cast<int>(dec.unitaries[0].rows());
  for (int i = 0; i < dec.size(); ++i)
    ch.ops.push_back(std::sqrt(std::max(0.0, dec.probs[i])) * dec.unitaries[i]);
  return ch;
}

double shannon_entropy_bits(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

RealMatrix bloch_matrix(const KrausChannel& ch) {
  if (ch.d_in != 2 || ch.d_out != 2)
    throw std::invalid_argument("bloch_matrix: requires a qubit channel");
  RealMatrix t(3, 3);
  for (int b = 1; b <= 3; ++b) {
    const DensityMatrix out = apply_channel(ch, DensityMatrix{pauli(b)});
    for (int a = 1; a <= 3; ++a) t(a - 1, b - 1) = 0.5 * (pauli(a) * out.mat).trace().real();
  }
  return t;
}

Matrix su2_from_so3(const RealMatrix& rot) {
  if (rot.rows() != 3 || rot.cols() != 3)
    throw std::invalid_argument("su2_from_so3: expects a 3x3 rotation");
  // Quaternion (w, x, y, z) via the standard branch on the largest of
  // trace and diagonal entries, then V = w*I - i(x*sx + y*sy + z*sz).
  double w, x, y, z;
  const double tr = rot.trace();
  if (tr > 0.0) {
    double s = std::sqrt(tr + 1.0) * 2.0;
    w = 0.25 * s;
    x = (rot(2, 1) - rot(1, 2)) / s;
    y = (rot(0, 2) - rot(2, 0)) / s;
    z = (rot(1, 0) - rot(0, 1)) / s;
  } else if (rot(0, 0) >= rot(1, 1) && rot(0, 0) >= rot(2, 2)) {
    double s = std::sqrt(1.0 + rot(0, 0) - rot(1, 1) - rot(2, 2)) * 2.0;
    w = (rot(2, 1) - rot(1, 2)) / s;
    x = 0.25 * s;
    y = (rot(0, 1) + rot(1, 0)) / s;
    z = (rot(0, 2) + rot(2, 0)) / s;
  } else if (rot(1, 1) >= rot(2, 2)) {
    double s = std::sqrt(1.0 - rot(0, 0) + rot(1, 1) - rot(2, 2)) * 2.0;
    w = (rot(0, 2) - rot(2, 0)) / s;
    x = (rot(0, 1) + rot(1, 0)) / s;
    y = 0.25 * s;
    z = (rot(1, 2) + rot(2, 1)) / s;
  } else {
    double s = std::sqrt(1.0 - rot(0, 0) - rot(1, 1) + rot(2, 2)) * 2.0;
    w = (rot(1, 0) - rot(0, 1)) / s;
    x = (rot(0, 2) + rot(2, 0)) / s;
    y = (rot(1, 2) + rot(2, 1)) / s;
    z = 0.25 * s;
  }
  const double norm = std::sqrt(w * w + x * x + y * y + z * z);
  w /= norm;
  x /= norm;
  y /= norm;
  z /= norm;
  if (w < 0.0 || (w == 0.0 && (x < 0.0 || (x == 0.0 && (y < 0.0 || (y == 0.0 && z < 0.0)))))) {
    w = -w;
    x = -x;
    y = -y;
    z = -z;
  }
  return w * pauli(0) -
         Complex(0, 1) * (x * pauli(1) + y * pauli(2) + z * pauli(3));
}

RuDecomposition pauli_decompose_qubit(const KrausChannel& ch, const ToleranceConfig& tol) {
  check_channel(ch, tol);
  if (ch.d_in != 2 || ch.d_out != 2)
    throw std::invalid_argument("pauli_decompose_qubit: requires a qubit channel");
  if (!is_unital(ch, tol))
    throw std::invalid_argument("pauli_decompose_qubit: requires a unital channel");

  const RealMatrix t = bloch_matrix(ch);
  Eigen::JacobiSVD<RealMatrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double du = svd.matrixU().determinant() >= 0.0 ? 1.0 : -1.0;
  const double dv = svd.matrixV().determinant() >= 0.0 ? 1.0 : -1.0;

  RealMatrix rl = svd.matrixU();
  rl.col(2) *= du;
  RealMatrix rr = svd.matrixV();
  rr.col(2) *= dv;
  rr.transposeInPlace();

  const RealVector sv = svd.singularValues();
  const double lx = sv(0);
  const double ly = sv(1);
  const double lz = du * dv * sv(2);

  const Matrix vl = su2_from_so3(rl);
  const Matrix vr = su2_from_so3(rr);

  const double p[4] = {
      0.25 * (1.0 + lx + ly + lz),
      0.25 * (1.0 + lx - ly - lz),
      0.25 * (1.0 - lx + ly - lz),
      0.25 * (1.0 - lx - ly + lz),
  };

  RuDecomposition dec;
  double kept = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (p[i] < -tol.eps_eq)
      throw std::invalid_argument("pauli_decompose_qubit: negative weight, not completely positive");
    if (p[i] <= tol.eps_eq) continue;
    dec.probs.push_back(p[i]);
    dec.unitaries.push_back(vl * pauli(i) * vr);
    kept += p[i];
  }
  if (dec.probs.empty()) throw std::runtime_error("pauli_decompose_qubit: all weights vanished");
  for (double& q : dec.probs) q /= kept;
  return dec;
}

double search_objective(const Matrix& m, const std::vector<Matrix>& kraus) {
  const std::vector<Matrix> a = mixed_ops(m, kraus);
  const int d = static_cast<int>(kraus[0].cols());
  double f = 0.0;
  for (const Matrix& ai : a) {
    Matrix g = ai.adjoint() * ai;
    const double tau = g.trace().real() / d;
    g.diagonal().array() -= tau;
    f += g.squaredNorm();
  }
  return f;
}

Matrix search_gradient(const Matrix& m, const std::vector<Matrix>& kraus) {
  const std::vector<Matrix> a = mixed_ops(m, kraus);
  const int r = static_cast<int>(m.rows());
  const int n = static_cast<int>(m.cols());
  const int d = static_cast<int>(kraus[0].cols());
  Matrix grad(r, n);
  for (int i = 0; i < n; ++i) {
    Matrix g = a[i].adjoint() * a[i];
    const double tau = g.trace().real() / d;
    g.diagonal().array() -= tau;
    const Matrix b = a[i] * g;  // Tr[G A^dag K] = <A G, K>_F
    for (int j = 0; j < r; ++j)
      grad(j, i) = 4.0 * (b.conjugate().cwiseProduct(kraus[j])).sum();
  }
  return grad;
}

SearchReport search_decomposition(const KrausChannel& ch, const SearchConfig& cfg,
                                  const ToleranceConfig& tol) {
  check_channel(ch, tol);
  if (ch.d_in != ch.d_out)
    throw std::invalid_argument("search_decomposition: requires equal dimensions");

  const ChoiOperator target = kraus_to_choi(ch, tol);
  const KrausChannel canonical = choi_to_canonical_kraus(target, tol);
  const int r = canonical.num_ops();

  SearchReport rep;
  rep.cardinality_bound_low = r;
  rep.cardinality_bound_high = r * r;
  if (!is_unital(ch, tol)) {
    rep.status = SearchStatus::not_unital;
    return rep;
  }

  std::vector<int> schedule = cfg.n_schedule;
  if (schedule.empty())
    for (int n = r; n <= r * r; ++n) schedule.push_back(n);
  for (int n : schedule)
    if (n < r || n > r * r)
      throw std::invalid_argument("search_decomposition: schedule entry outside [rank, rank^2]");
  if (cfg.restarts < 1 || cfg.max_iters < 1)
    throw std::invalid_argument("search_decomposition: counts must be positive");

  // f below obj_tol marks a candidate; the extra headroom of the floor lets
  // the polish drive the solution far enough that the Choi residual lands
  // well under the reported threshold.
  const double f_floor = std::min(cfg.obj_tol * 1e-16, 1e-28);
  constexpr double kResidualAccept = 1e-6;
  // The gradient phase only needs to land in a basin; the quadratic polish
  // takes over from there and either bottoms out or fails fast.
  constexpr double kBasinFloor = 1e-5;
  constexpr double kPolishEntry = 1e-2;

  double best_f = std::numeric_limits<double>::infinity();
  double best_residual = std::numeric_limits<double>::infinity();

  for (int n : schedule) {
    for (int restart = 0; restart < cfg.restarts; ++restart) {
      std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<uint64_t>(n),
                                   static_cast<uint64_t>(restart)));
      const Matrix m0 = retract_rows(ginibre(r, n, rng));
      MinimizeResult res = minimize_objective(m0, canonical.ops, cfg.max_iters, cfg.step,
                                              std::max(f_floor, kBasinFloor));
      if (res.f < kPolishEntry) {
        MinimizeResult polished = polish_mixing(res.m, canonical.ops, 150, f_floor);
        if (polished.f < res.f) res = std::move(polished);
      }
      rep.objective_trace.push_back(res.f);

      const bool candidate = res.f < cfg.obj_tol;
      if (candidate || res.f < best_f) {
        RuDecomposition dec =
            povm_to_decomposition(canonical, povm_from_mixing(res.m), tol);
        const double residual = choi_distance(kraus_to_choi(to_kraus(dec), tol), target);
        if (res.f < best_f) {
          best_f = res.f;
          best_residual = residual;
        }
        if (candidate && residual <= kResidualAccept) {
          rep.status = SearchStatus::found;
          rep.decomposition = std::move(dec);
          rep.entropy_bits = shannon_entropy_bits(rep.decomposition->probs);
          rep.residual = residual;
          rep.best_objective = res.f;
          return rep;
        }
      }
    }
  }

  rep.status = SearchStatus::not_found;
  rep.best_objective = best_f;
  rep.residual = best_residual;
  return rep;
}

SearchReport decompose_channel(const KrausChannel& ch, const SearchConfig& cfg,
                               const ToleranceConfig& tol) {
  check_channel(ch, tol);
  if (ch.d_in != ch.d_out)
    throw std::invalid_argument("decompose_channel: requires equal dimensions");
  if (ch.d_in != 2) return search_decomposition(ch, cfg, tol);

  const ChoiOperator target = kraus_to_choi(ch, tol);
  const int r = choi_rank(target, tol);
  // the closed form never iterates, but the config must still be valid for
  // this channel's cardinality window
  for (int n : cfg.n_schedule)
    if (n < r || n > r * r)
      throw std::invalid_argument("decompose_channel: schedule entry outside [rank, rank^2]");
  SearchReport rep;
  rep.cardinality_bound_low = r;
  rep.cardinality_bound_high = r * r;
  if (!is_unital(ch, tol)) {
    rep.status = SearchStatus::not_unital;
    return rep;
  }
  rep.decomposition = pauli_decompose_qubit(ch, tol);
  rep.status = SearchStatus::found;
  rep.entropy_bits = shannon_entropy_bits(rep.decomposition->probs);
  rep.residual = choi_distance(kraus_to_choi(to_kraus(*rep.decomposition), tol), target);
  rep.best_objective = 0.0;
  return rep;
}

RuDecomposition povm_to_decomposition(const KrausChannel& ch, const RankOnePovm& p,
                                      const ToleranceConfig& tol) {
  if (ch.d_in != ch.d_out)
    throw std::invalid_argument("povm_to_decomposition: requires equal dimensions");
  if (p.r != ch.num_ops())
    throw std::invalid_argument("povm_to_decomposition: POVM dimension != Kraus count");
  const int d = ch.d_in;

  RuDecomposition dec;
  double kept = 0.0;
  for (const Vector& alpha : p.vectors) {
    Matrix a = Matrix::Zero(d, d);
    for (int j = 0; j < p.r; ++j) a += std::conj(alpha(j)) * ch.ops[j];
    const double pi = (a.adjoint() * a).trace().real() / d;
    if (pi <= tol.eps_eq) continue;
    dec.probs.push_back(pi);
    dec.unitaries.push_back(polar_unitary(a));
    kept += pi;
  }
  if (dec.probs.empty())
    throw std::runtime_error("povm_to_decomposition: every element had negligible weight");
  for (double& q : dec.probs) q /= kept;
  return dec;
}

RuDecomposition reduce_cardinality(const KrausChannel& ch, const RankOnePovm& p,
                                   const ToleranceConfig& tol) {
  if (!check_dice_condition(ch, p, tol))
    throw std::invalid_argument("reduce_cardinality: POVM fails the dice condition");
  const ExtremalSplit split = extremal_decompose(p, tol);
  int pick = 0;
  for (int k = 1; k < static_cast<int>(split.weights.size()); ++k)
    if (split.weights[k] > split.weights[pick]) pick = k;
  return povm_to_decomposition(ch, split.components[pick], tol);
}

EntropyBounds entropy_and_bounds(const RuDecomposition& dec, const ChoiOperator& r,
                                 const ToleranceConfig& tol) {
  EntropyBounds out;
  out.h_bits = shannon_entropy_bits(dec.probs);
  out.bound_rank = 2.0 * std::log2(static_cast<double>(choi_rank(r, tol)));
  out.bound_dim = 4.0 * std::log2(static_cast<double>(r.d_in));
  out.ok = out.h_bits <= out.bound_rank + tol.eps_eq;
  return out;
}

std::pair<KrausChannel, RuDecomposition> generate_random_ru_channel(int d, int k, uint64_t seed) {
  if (d < 1) throw std::invalid_argument("generator: dimension must be positive");
  if (k < 1 || k > d * d) throw std::invalid_argument("generator: K must lie in [1, d^2]");
  std::mt19937_64 rng(mix_seed(seed, static_cast<uint64_t>(d), static_cast<uint64_t>(k)));
  RuDecomposition dec;
  dec.probs = sample_simplex(k, rng);
  for (int i = 0; i < k; ++i) dec.unitaries.push_back(haar_unitary(d, rng));
  return {to_kraus(dec), dec};
}

}  // namespace runitary
