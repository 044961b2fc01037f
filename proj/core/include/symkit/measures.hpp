#pragma once

#include <cstdint>

#include "symkit/channels.hpp"
#include "symkit/symmetry.hpp"
#include "symkit/types.hpp"

namespace symkit {

// ============================================================================
// Symmetry measures.  Closed forms are exact (lower == value == upper);
// optimization-backed measures report certified brackets in [lower, upper].
// ============================================================================

/// Bose-symmetry overlap Tr[Pi rho] in [0, 1].  Exact.
MeasureResult bose_symmetry(const Matrix& rho, const GroupRep& rep);

/// Hilbert-Schmidt asymmetry (1/|G|) sum_g ||[U(g), rho]||_2^2 in
/// [0, gamma_bound(|G|)].  Evaluated through the twirl-overlap identity
/// 2(tr[rho^2] - tr[rho T_G(rho)]) (the reported value) and cross-checked
/// against the direct commutator route; lower/upper carry the two routes.
MeasureResult hs_asymmetry(const Matrix& rho, const GroupRep& rep);

/// The direct route alone: average squared Frobenius norm of the commutators.
double hs_asymmetry_direct(const Matrix& rho, const GroupRep& rep);

/// max_rho Tr[Pi N(rho)] = lambda_max(N†(Pi)) in [0, 1].  Exact; opt_state
/// carries the maximizing pure input (top eigenvector).
MeasureResult channel_bose_max(const QuantumChannel& ch, const GroupRep& rep);

/// (1/2) || rho - T_G(rho) ||_1.  Exact closed form.
double twirl_td(const Matrix& rho, const GroupRep& rep);

/// min over G-symmetric sigma of (1/2) || rho - sigma ||_1, as an SDP over
/// the twirl fixed-point set.  value is the attained primal; lower is the
/// dual bound.
MeasureResult min_td_sym(const Matrix& rho, const GroupRep& rep);

/// F(rho, T_G(rho)).  Exact closed form.
double twirl_fid(const Matrix& rho, const GroupRep& rep);

/// max over G-symmetric sigma of F(rho, sigma), via the root-fidelity SDP
/// restricted to the twirl fixed-point set.  upper is the squared dual bound.
MeasureResult max_fid_sym(const Matrix& rho, const GroupRep& rep);

/// max over extensions omega_RS of rho_S (Tr_R omega = rho_S) of
/// Tr[Pi_RS omega]; equivalently max over G-BSE sigma of F(rho_S, sigma).
/// rep acts on R ⊗ S with the reference factor R most significant and
/// dim S = dim rho_S.  value/upper come from the linear SDP (primal/dual);
/// lower is an independent see-saw prover bound.
MeasureResult bse_fidelity(const Matrix& rho_s, const GroupRep& rep,
                           int seesaw_restarts = 20, std::uint64_t seed = 0);

/// max over SEPARABLE extensions omega_RS of rho_S of Tr[Pi_RS omega],
/// lower-bounded by alternating optimization of an entanglement-breaking
/// ensemble (POVM step solved exactly as an SDP, state step by top
/// eigenvectors; monotone per sweep).  upper carries the unconstrained
/// bse_fidelity dual bound.
MeasureResult sep_ext_bose(const Matrix& rho_s, const GroupRep& rep,
                           int restarts, std::uint64_t seed);

/// The prover realized by the sep_ext_bose optimizer: a POVM on the canonical
/// purifying system R'' (dim = dim S) and the pure reference states phi_x it
/// prepares on R.  Applying EBChannel(povm, states) to the purification
/// reproduces `value` as Tr[Pi_RS (E ⊗ id)(psi)].
struct SepExtWitness {
    std::vector<Matrix> povm;    // on R'', one element per outcome
    std::vector<Matrix> states;  // on R, pure
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};
SepExtWitness sep_ext_witness(const Matrix& rho_s, const GroupRep& rep,
                              int restarts, std::uint64_t seed);

/// max over channel inputs rho_B of bse_fidelity(N(rho_B)): alternates an
/// exact inner SDP with a top-eigenvector update of the input on the
/// effective operator N†(Y) built from the inner dual; multi-restart, best
/// value across the whole iteration trace (stored in .trace).  converged is
/// false when the value was still moving at the iteration cap.
MeasureResult channel_bse(const QuantumChannel& ch, const GroupRep& rep,
                          int restarts = 5, std::uint64_t seed = 0);

/// max_g || [U(g), e^{-iHt}] ||_inf^2 in [0, 4], with argmax_g (ties broken
/// toward the smallest group index).  Exact.
MeasureResult ham_max_spec(const Matrix& h, double t, const GroupRep& rep);

/// (1/|G|) sum_g || [U(g), e^{-iHt}] ||_inf^2 in [0, 4].  Exact.
MeasureResult ham_avg_spec(const Matrix& h, double t, const GroupRep& rep);

} // namespace symkit
