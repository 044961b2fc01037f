#pragma once

/// Reductions from decision-problem descriptions (verifier circuits,
/// state-preparation pairs, Hamiltonians) to symmetry-testing instances.
/// Each builder returns a SymmetryInstance whose measure value encodes the
/// source problem's optimal acceptance statistic exactly; verify_reduction
/// replays that identity on randomized instances.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symkit/channels.hpp"
#include "symkit/circuits.hpp"
#include "symkit/measures.hpp"
#include "symkit/symmetry.hpp"

namespace symkit {

// ============================================================================
// Symmetry-testing instances
// ============================================================================

/// The ten decision problems the toolkit measures map onto.
enum class ProblemKind {
    StateBose,    // bose_symmetry threshold problem
    StateHS,      // hs_asymmetry threshold problem
    ChannelBose,  // channel_bose_max threshold problem
    StateSymTD,   // min_td_sym threshold problem
    StateSymFid,  // max_fid_sym threshold problem
    StateBSE,     // bse_fidelity threshold problem
    SepExtBose,   // sep_ext_bose threshold problem
    ChannelBSE,   // channel_bse threshold problem
    HamMaxSpec,   // ham_max_spec threshold problem
    HamAvgSpec,   // ham_avg_spec threshold problem
};

const char* problem_kind_name(ProblemKind kind);
/// Inverse of problem_kind_name.  Throws SchemaError on an unknown name.
ProblemKind problem_kind_from_name(const std::string& name);

/// One decision-problem instance: a payload (state preparation, channel, or
/// Hamiltonian), the symmetry it is tested against, and the promise
/// thresholds (YES iff measure >= alpha, NO iff measure <= beta; for the
/// asymmetry-flavoured kinds the roles invert, the arithmetic does not).
struct SymmetryInstance {
    ProblemKind kind = ProblemKind::StateBose;

    std::optional<StatePrep> state;         // state kinds
    std::optional<QuantumChannel> channel;  // channel kinds
    Matrix hamiltonian;                     // Hamiltonian kinds
    double time = 0.0;                      // evolution time for Hamiltonian kinds

    std::optional<GroupRep> rep;

    double alpha = 2.0 / 3.0;
    double beta = 1.0 / 3.0;
};

/// Largest value the instance's measure can attain (1 for most kinds, the
/// antisymmetric bound gamma for StateHS, 4 for the Hamiltonian kinds).
double instance_range_max(const SymmetryInstance& inst);

/// Structural checks: payload present and matching the kind, rep present and
/// valid with dimensions consistent with the payload, and
/// 0 <= beta < alpha <= instance_range_max.  Throws ShapeError /
/// BadThresholds / BadParams.
void validate_instance(const SymmetryInstance& inst);

/// Evaluate the instance's defining measure (dispatching on kind).  restarts
/// and seed feed the optimizer-backed measures and are ignored by the
/// closed-form ones.
MeasureResult run_instance_measure(const SymmetryInstance& inst,
                                   int restarts = 5, std::uint64_t seed = 0);

// ============================================================================
// Source problems
// ============================================================================

/// A bounded-error verifier circuit over registers "S" (input) and "A"
/// (workspace ancillas, initialised |0>).  Output wire 0 is the decision
/// qubit D (accept = |1>); the remaining wires are garbage G.
struct BQPCircuit {
    GateCircuit circuit;
    std::vector<long> input_x;  // one digit per "S" wire
};

/// Throws BadCircuit unless registers "S" and "A" exist and wire 0 has
/// dimension 2, and BadParams unless input_x has one in-range digit per "S"
/// wire.
void validate_bqp(const BQPCircuit& q);

/// Acceptance probability: weight of D = |1> after running the circuit on
/// |x>_S |0>_A.
double bqp_accept_probability(const BQPCircuit& q);

// ============================================================================
// Builders
// ============================================================================

/// Decision-qubit marginal rho_D with the Z2 representation {I, -Z}:
/// bose_symmetry(rho_D) equals the circuit's acceptance probability.
SymmetryInstance bqp_to_bose(const BQPCircuit& q);

/// Appends a fresh ancilla qubit "C" and tests the pure input state
/// |x,0,0> against {I, Q† CNOT_{D->C} Q}: hs_asymmetry equals
/// 1 - p_reject^2.
SymmetryInstance bqp_to_hs(const BQPCircuit& q);

/// Verifier circuit over registers "S", "A", "P" (proof register last);
/// wire 0 of the output is the decision qubit.  Builds the channel
/// N_{P->D}(.) = Tr_G[Q(|x><x| ⊗ |0><0| ⊗ .)Q†] with the {I, -Z}
/// representation: channel_bose_max equals the best prover's acceptance
/// probability.
SymmetryInstance qma_to_channel_bose(const GateCircuit& q,
                                     const std::vector<long>& x);

/// Coin-flag construction for state distinguishability: prepares
/// tau_FB = (|0><0| ⊗ omega0 + |1><1| ⊗ omega1)/2 with the flag-flip
/// representation {I, X_F ⊗ I_B}.  Twirling distance of tau equals
/// (1/4)·||omega0 - omega1||_1.  The two preparations must share wire
/// dimensions and kept wires (ShapeError otherwise).
SymmetryInstance qsd_to_symtd(const StatePrep& c0, const StatePrep& c1);

/// Threshold map from the trace-distance problem to the fidelity problem on
/// the same state and representation: (alpha, beta) -> ((1-beta)^2, 1-alpha^2).
/// Requires kind StateSymTD with 0 <= beta < alpha <= 1 and a non-degenerate
/// mapped pair (BadThresholds otherwise).
SymmetryInstance symtd_to_symfid(const SymmetryInstance& inst);

/// Two-message game: u1 prepares psi_{S'R} from |x>_S |0>_A (leading
/// sprime_wires output wires form S', the rest R goes to the prover), u2
/// decides on S' ⊗ R' with wire 0 the decision qubit.  Requires
/// dim R' == dim R.  Builds rho_S' with the involution
/// V = permute(U2† (-Z_D ⊗ I_G) U2) acting on R' ⊗ S': bse_fidelity equals
/// the best prover's acceptance probability.
SymmetryInstance qip2_to_bse(const GateCircuit& u1, const GateCircuit& u2,
                             const std::vector<long>& x, int sprime_wires);

/// Three-message game: u1 acts on "S", "A" and the prover's first message
/// register "R" (trailing); u2 as in qip2_to_bse.  Builds the channel
/// N_{R''->S'}(.) = Tr_R[W . W†] with W the |x>_S |0>_A column embedding of
/// u1, under the same R' ⊗ S' involution: channel_bse equals the best
/// prover's acceptance probability.
SymmetryInstance qip3_to_channel_bse(const GateCircuit& u1,
                                     const GateCircuit& u2,
                                     const std::vector<long>& x,
                                     int sprime_wires);

/// Entanglement-broken two-message game: the verifier holds psi_RS (R most
/// significant), sends R through the prover's entanglement-breaking channel
/// into v's leading R' wires, then applies v on R' ⊗ S (register "S"
/// trailing; wire 0 the decision qubit).  Builds rho_S = Tr_R[psi psi†] with
/// the involution W = V† (-Z_D ⊗ I_G) V on R' ⊗ S: sep_ext_bose equals the
/// best entanglement-breaking prover's acceptance probability.  psi_rs must
/// factor as dim R x dim S with dim S matching v's "S" register.
SymmetryInstance qipeb2_to_sepext(const GateCircuit& v,
                                  const PureState& psi_rs);

/// Threshold bookkeeping for n-fold parallel polarization of a
/// distinguishability promise 0 <= beta < alpha <= 1: the polarized instance
/// has thresholds ((1 - 2^-n)/4, 2^-(n+1)).  Throws BadParams for n < 1 and
/// BadThresholds when the input pair is invalid or the mapped pair is
/// degenerate (n == 1).
std::pair<double, double> polarized_thresholds(double alpha, double beta,
                                               int n);

// ============================================================================
// Verification
// ============================================================================

struct VerifyReport {
    std::string kind;
    int trials = 0;
    int failures = 0;
    double max_deviation = 0.0;
    std::uint64_t seed = 0;

    bool passed() const { return trials > 0 && failures == 0; }
};

/// Builder names accepted by verify_reduction.
std::vector<std::string> reduction_kinds();

/// Replays a builder's defining identity on `trials` randomized instances
/// (dimensions <= 16), comparing the instance measure against an
/// independently simulated optimal acceptance statistic.  Closed-form
/// builders are checked to 1e-9 or better, optimizer-backed ones to their
/// documented tolerance.  Throws BadParams on an unknown kind or trials < 1.
VerifyReport verify_reduction(const std::string& kind, int trials,
                              std::uint64_t seed);

}  // namespace symkit
