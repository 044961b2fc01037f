#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "symkit/rng.hpp"
#include "symkit/types.hpp"

namespace symkit {

// ============================================================================
// Semidefinite programming
// ============================================================================

/// Equality-constrained SDP over one Hermitian PSD block:
///   optimize  <C, X> = Re tr[C X]
///   s.t.      <A_i, X> = b_i  (i = 1..m),  X >= 0.
/// All data matrices must be Hermitian; the block dimension is capped at 64.
struct SdpProblem {
    Matrix C;
    std::vector<Matrix> A;
    RealVector b;
    bool maximize = true;
};

struct SdpOptions {
    double tol_gap = 1e-9;    // relative duality gap target
    double tol_feas = 1e-10;  // primal/dual residual target (relative)
    int max_iter = 5000;      // hard cap; a converged solve needs ~10-40
    // On degenerate instances roundoff keeps the iterates from meeting the
    // tight targets jointly; the solver then stops once progress stalls and
    // accepts the best iterate seen if its worst relative residual (primal,
    // dual, gap, mu) is at most tol_stall.
    double tol_stall = 5e-8;
    int stall_window = 40;  // iterations without a new best before stopping
    bool throw_on_fail = true;
};

struct SdpResult {
    Matrix X;           // primal solution, PSD
    RealVector y;       // dual multipliers for the pruned constraint system
    Matrix dual_combo;  // sum_i y_i A_i over the pruned system (the dual
                        // certificate: dual_combo - C >= 0 at optimality,
                        // before any maximize-sign flip)
    double primal;      // <C, X> in the caller's sense (max or min)
    double dual;        // certified bound: >= primal for max, <= primal for min
    double gap;         // |dual - primal|
    int iterations;
    bool converged;
};

/// Primal-dual interior-point solve (HKM direction, adaptive centering).
/// Linearly dependent constraints are pruned automatically; inconsistent
/// constraints raise Infeasible with the offending combination in the
/// message.  A solve that stalls or hits max_iter before reaching the tight
/// targets still succeeds when its best iterate is tol_stall-accurate;
/// otherwise it raises SolverFail (or returns converged=false when
/// throw_on_fail is off).
SdpResult sdp_solve(const SdpProblem& p, const SdpOptions& opt = {});

/// Append the d^2 real equality constraints fixing sum_k coef_k * (block k of
/// X) = rhs, where block k is the dim x dim diagonal block at offset_k.
/// Blocks may overlap.  Used by the measure builders.
void add_block_equalities(SdpProblem& p, long big_dim,
                          const std::vector<std::pair<long, double>>& blocks,
                          long dim, const Matrix& rhs);

/// Append constraints <E - T(E), X_block> = 0 for a Hermitian basis E of the
/// dim x dim block at `offset`, where T is the twirl map evaluated by the
/// callback.  Redundant rows are pruned inside sdp_solve.
void add_map_invariance(SdpProblem& p, long big_dim, long offset, long dim,
                        const std::function<Matrix(const Matrix&)>& map);

/// Append the trace constraint tr[X_block] = value on a diagonal block.
void add_block_trace(SdpProblem& p, long big_dim, long offset, long dim, double value);

/// Append constraints Tr_A[X] = rhs (or Tr_B[X] = rhs) on a bipartite block
/// of shape dim_a * dim_b starting at offset.  `trace_first` selects whether
/// the leading (most significant) factor is traced.
void add_partial_trace_equalities(SdpProblem& p, long big_dim, long offset,
                                  long dim_a, long dim_b, bool trace_first,
                                  const Matrix& rhs);

// ============================================================================
// See-saw over isometries
// ============================================================================

struct SeesawOptions {
    int restarts = 20;
    int max_iter = 400;
    double tol = 1e-11;   // absolute value-change stopping rule
};

struct SeesawResult {
    Matrix isometry;  // act_out x act_in, V†V = I
    double value;
    int iterations;   // total across restarts
    bool converged;
};

/// Maximize ||Pi (I_spec ⊗ V) |in>||^2 over isometries V: act_in -> act_out,
/// where Pi is a projector on spec ⊗ act_out and |in> lives on
/// spec ⊗ act_in.  Update rule (documented invariant: the objective never
/// decreases): with |out> = (I ⊗ V)|in> and |w> = Pi|out>, the gradient
/// pairing G(a_out, a_in) = sum_s w[s, a_out] conj(in[s, a_in]) satisfies
/// value = Re tr[V† G]; the isometry maximizing the linearization is the
/// polar factor of G, and Cauchy-Schwarz in the Pi-seminorm gives
/// value(polar(G)) >= value(V).  Deterministic given the rng seed.
SeesawResult seesaw_prover(const Matrix& pi, const Vector& in, long dim_spec,
                             long act_in, long act_out, CounterRng rng,
                             const SeesawOptions& opt = {});

/// Polar factor of g (rows >= cols): the isometry U V† from the thin SVD
/// g = U S V†, i.e. the maximizer of Re tr[P† g] over isometries P.
Matrix polar_isometry(const Matrix& g);

// ============================================================================
// Random ensembles
// ============================================================================

/// Haar-random unitary (QR of a Gaussian matrix with phase correction).
Matrix haar_random_unitary(long dim, CounterRng& rng);

/// Haar-random pure state (normalized complex Gaussian vector).
Vector haar_random_state(long dim, CounterRng& rng);

/// Random rank-r density matrix (partial trace of a Haar state on dim * r).
Matrix random_density(long dim, CounterRng& rng, long rank = 0);

} // namespace symkit
