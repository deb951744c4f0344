#pragma once

#include "runitary/types.hpp"

namespace runitary {

// Row-major flattening of a matrix into a vector and back; this fixes the
// vectorization convention used by the Choi construction.
Vector flatten_row_major(const Matrix& k);
Matrix unflatten_row_major(const Vector& w, int rows, int cols);

bool all_finite(const Matrix& m);
bool is_hermitian(const Matrix& m, double eps);
// Smallest eigenvalue >= -eps (Hermitian part is used).
bool is_psd(const Matrix& m, double eps);

bool is_valid_density(const DensityMatrix& rho, const ToleranceConfig& tol = {});

bool is_trace_preserving(const KrausChannel& ch, double eps);

// Throws std::invalid_argument on shape problems, non-finite entries, or a
// completeness violation beyond tol.eps_eq.
void check_channel(const KrausChannel& ch, const ToleranceConfig& tol = {});

// Hermiticity/PSD/trace/partial-trace invariants of a Choi operator.
void check_choi(const ChoiOperator& r, const ToleranceConfig& tol = {});

// Partial traces of a Choi matrix: over the output (first) factor, giving a
// d_in x d_in matrix, and over the reference (second) factor, giving
// d_out x d_out.
Matrix choi_trace_out_output(const ChoiOperator& r);
Matrix choi_trace_out_reference(const ChoiOperator& r);

// R = sum_j w_j w_j^dag with w_j = flatten(K_j); equals (E x Id)|Omega><Omega|
// for |Omega> = sum_i |i>|i>.
ChoiOperator kraus_to_choi(const KrausChannel& ch, const ToleranceConfig& tol = {});

// Diagonalize R and keep eigenpairs above the relative rank cutoff. The
// returned operators are pairwise trace-orthogonal.
KrausChannel choi_to_canonical_kraus(const ChoiOperator& r, const ToleranceConfig& tol = {});

int choi_rank(const ChoiOperator& r, const ToleranceConfig& tol = {});

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

// sum_j K_j K_j^dag = I. Requires d_in == d_out.
bool is_unital(const KrausChannel& ch, const ToleranceConfig& tol = {});

// Ancilla marginal of the dilated state: an m x m density matrix with
// entries <j|E~(rho)|l> = Tr[K_j rho K_l^dag].
DensityMatrix complementary_apply(const KrausChannel& ch, const DensityMatrix& rho);

// Heisenberg-picture ancillary channel on |alpha><alpha|: returns A^dag A
// with A = sum_j conj(alpha_j) K_j.
Matrix dual_apply(const KrausChannel& ch, const Vector& alpha);

}  // namespace runitary
