#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symkit/channels.hpp"
#include "symkit/circuits.hpp"
#include "symkit/symmetry.hpp"
#include "symkit/types.hpp"

namespace symkit {

// ============================================================================
// Interactive verification protocols.  A Protocol is an executable verifier
// specification; a ProverStrategy fills in the prover's moves.  run_exact
// simulates the full circuit and returns the exact acceptance probability;
// run_shots samples the decision qubit.
// ============================================================================

enum class ProtocolKind {
    BoseTest,     // group-register Fourier test; accepts on |0> of the index
    HSSwapTest,   // coin + two swap tests; acceptance 1/2 + q/8
    UhlmannFid,   // fidelity via a prover isometry on the purifying system
    SepExtEB,     // separable-extension test with an EB-channel prover
    HamQMA,       // prover sends (g, psi); accepts on |-> of the control
    HamQAM,       // verifier samples g; prover answers with psi_g
    QIP2Generic,  // two-message game: V1, prover channel, V2, measure D
    QIP3Generic,  // three-message game: prover state, V1, prover channel, V2
};

const char* protocol_kind_name(ProtocolKind k);

/// Verifier specification.  Which fields are meaningful depends on kind:
///   BoseTest / HSSwapTest / UhlmannFid / SepExtEB : prep + rep
///   HamQMA / HamQAM                               : hamiltonian + time + rep
///   QIP2Generic / QIP3Generic                     : u1 + u2 + input_x +
///                                                   sprime_wires
/// For the generic games, u1 runs on registers "S" (loaded with input_x) and
/// "A" (ancillas, |0>); QIP3Generic adds a trailing register "R" holding the
/// prover's first message.  After u1 the leading sprime_wires wires form S'
/// (kept by the verifier) and the rest are sent to the prover; u2 acts on
/// S' tensor R' where R' is the prover's reply, and wire 0 of u2 is the
/// decision qubit D, accepting on |1>.
struct Protocol {
    ProtocolKind kind = ProtocolKind::BoseTest;
    std::optional<StatePrep> prep;
    std::optional<GroupRep> rep;
    Matrix hamiltonian;
    double time = 0.0;
    std::optional<GateCircuit> u1;
    std::optional<GateCircuit> u2;
    std::vector<long> input_x;
    int sprime_wires = 0;
};

/// The prover's side of a protocol.
///   FixedIsometry   : UhlmannFid (V: R'' -> R'), QIP2Generic (V: R -> R' ⊗ E'),
///                     QIP3Generic (with states[0] as the first message)
///   FixedEBChannel  : SepExtEB
///   FixedStateFamily: HamQMA / HamQAM (one state per group element)
///   Optimized       : any kind; runs the built-in optimizer (closed-form
///                     polar factor for UhlmannFid, see-saw or alternating
///                     solvers elsewhere) with the given restarts and seed.
/// Protocols without a prover (BoseTest, HSSwapTest) ignore the strategy.
struct ProverStrategy {
    enum class Kind { FixedIsometry, FixedEBChannel, FixedStateFamily, Optimized };

    Kind kind = Kind::Optimized;
    Matrix isometry;
    std::optional<EBChannel> eb;
    std::vector<Vector> states;
    int restarts = 20;
    std::uint64_t seed = 0;

    static ProverStrategy optimized(int restarts = 20, std::uint64_t seed = 0);
    static ProverStrategy fixed_isometry(Matrix v);
    static ProverStrategy fixed_eb(EBChannel channel);
    static ProverStrategy fixed_states(std::vector<Vector> per_g);
};

/// Exact acceptance probability of the protocol against the strategy, in
/// [0, 1], from a full density/state-vector simulation of the verifier
/// circuit.  Deterministic given the strategy's seed.
double run_exact(const Protocol& p, const ProverStrategy& s);

struct ShotResult {
    double estimate = 0.0;  // accepted / shots
    long accepted = 0;
    long shots = 0;
};

/// Bernoulli sampling of the decision measurement: `shots` independent draws
/// at the exact acceptance probability, from the counter RNG at `seed`.
ShotResult run_shots(const Protocol& p, const ProverStrategy& s, long shots,
                     std::uint64_t seed);

// ============================================================================
// Shot planning (Hoeffding)
// ============================================================================

struct ShotPlan {
    double epsilon = 0.0;  // additive error target
    double delta = 0.0;    // failure probability
    double range = 1.0;    // width of the estimator's bounded support
    long shots = 0;
};

/// Smallest n with 2 exp(-2 n eps^2 / M^2) <= delta: the sample mean of n
/// i.i.d. draws from [0, M] is within eps of its expectation except with
/// probability delta.  Requires 0 < eps < 1, 0 < delta < 1, M > 0.
ShotPlan plan_shots(double epsilon, double delta, double range_m);

/// Plan for estimating sqrt(E[z]) of a [0,1]-valued z to additive error eps:
/// |sqrt(a) - sqrt(b)| <= sqrt(|a - b|) reduces it to a mean estimate at
/// accuracy eps^2, so n = ceil(ln(2/delta) / (2 eps^4)).
ShotPlan plan_shots_squared(double epsilon, double delta);

/// sqrt of a [0, 1] sample mean; BadParams outside that range.
double sqrt_estimator(double mean);

// ============================================================================
// Protocol builders
// ============================================================================

/// Fourier test on a group-index register: QFT, controlled-U(g) multiplexer
/// on the prepared system, inverse QFT, accept on index outcome 0.  The
/// acceptance probability equals Tr[Pi rho] for the realized state.
Protocol bose_test_protocol(const GroupRep& rep, StatePrep prep);

/// Fair coin between a purity swap test (accept on ancilla 0) and a
/// rho-vs-U(g) rho U(g)† swap test with uniformly random g (accept on
/// ancilla 1); acceptance 1/2 + hs_asymmetry / 8.
Protocol hs_swap_test_protocol(const GroupRep& rep, StatePrep prep);

/// Fidelity-with-the-twirl protocol: the verifier runs the preparation
/// adjoint of the symmetrized state on (prover reply ⊗ S) and accepts on
/// all-zeros; the optimal prover is the polar factor of the overlap
/// operator, achieving F(rho, T_G(rho)).
Protocol uhlmann_protocol(StatePrep prep, const GroupRep& rep);

/// Separable-extension test: the verifier purifies the realized state, sends
/// the purifying system through the prover's entanglement-breaking channel,
/// and Fourier-tests the result against rep (on R ⊗ S, reference first).
Protocol sep_ext_protocol(StatePrep prep, const GroupRep& rep);

/// Commutation test for e^{-iHt}: prover sends g and a state; the verifier
/// runs the controlled-commutator circuit and accepts on |-> of the control.
/// Optimal acceptance is ham_max_spec(h, t, rep) / 4.
Protocol ham_qma_protocol(const Matrix& h, double t, const GroupRep& rep);

/// Arthur-Merlin variant: the verifier samples g uniformly before the prover
/// answers.  Optimal acceptance is ham_avg_spec(h, t, rep) / 4.
Protocol ham_qam_protocol(const Matrix& h, double t, const GroupRep& rep);

/// Generic two-message game (see Protocol for the register contract).
Protocol qip2_protocol(GateCircuit u1, GateCircuit u2, std::vector<long> input_x,
                       int sprime_wires);

/// Generic three-message game: the prover opens with a state on register "R"
/// of u1 (entangled with a private system), then answers the verifier's
/// second message with an isometry.
Protocol qip3_protocol(GateCircuit u1, GateCircuit u2, std::vector<long> input_x,
                       int sprime_wires);

} // namespace symkit
