#include "symkit/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "symkit/errors.hpp"
#include "symkit/numerics.hpp"
#include "symkit/optimize.hpp"
#include "symkit/protocols.hpp"
#include "symkit/rng.hpp"

namespace symkit {

namespace {

// ----------------------------------------------------------------------------
// Small circuit utilities
// ----------------------------------------------------------------------------

std::vector<long> digits_of(long index, const std::vector<long>& dims) {
    std::vector<long> d(dims.size(), 0);
    for (size_t w = dims.size(); w-- > 0;) {
        d[w] = index % dims[w];
        index /= dims[w];
    }
    return d;
}

/// Gate rotating |0> to |digit> on one wire (X for qubits, a cyclic shift
/// for qudits).
Gate prep_gate(long digit, long dim, int wire) {
    if (dim == 2) return Gate::simple(GateKind::X, wire);
    Matrix p = Matrix::Zero(dim, dim);
    for (long j = 0; j < dim; ++j) p((j + digit) % dim, j) = 1.0;
    return Gate::raw(p, {wire});
}

const Register& find_register(const GateCircuit& c, const std::string& name,
                              const char* what) {
    for (const Register& r : c.registers())
        if (r.name == name) return r;
    throw BadCircuit(std::string(what) + ": circuit has no register \"" + name +
                     "\"");
}

/// Per-wire digits of the full input basis state: x on register "S", zeros
/// elsewhere.
std::vector<long> x_digits(const GateCircuit& c, const std::vector<long>& x,
                           const char* what) {
    const Register& s = find_register(c, "S", what);
    if (x.size() != s.wire_dims.size())
        throw BadParams(std::string(what) + ": input has " +
                        std::to_string(x.size()) + " digits for " +
                        std::to_string(s.wire_dims.size()) + " \"S\" wires");
    std::vector<long> digits(c.wire_dims().size(), 0);
    const int off = c.wire("S", 0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0 || x[i] >= s.wire_dims[i])
            throw BadParams(std::string(what) + ": input digit " +
                            std::to_string(x[i]) + " out of range");
        digits[static_cast<size_t>(off) + i] = x[i];
    }
    return digits;
}

/// Unitary whose first column is psi (Gram-Schmidt completion).
Matrix unitary_with_column(const Vector& psi) {
    const long d = psi.size();
    Matrix u = Matrix::Zero(d, d);
    u.col(0) = psi / psi.norm();
    long filled = 1;
    for (long j = 0; j < d && filled < d; ++j) {
        Vector e = Vector::Unit(d, j);
        for (long k = 0; k < filled; ++k) e -= u.col(k) * u.col(k).dot(e);
        const double n = e.norm();
        if (n > 1e-6) u.col(filled++) = e / n;
    }
    if (filled < d)
        throw NonConvergence("unitary_with_column: basis completion failed");
    return u;
}

/// Canonical preparation of rho: a purifying unitary on "P" ⊗ "S" with the
/// "S" factor kept.
StatePrep state_prep_of(const Matrix& rho) {
    const long d = rho.rows();
    const PureState psi = purify(DensityMatrix(rho));
    GateCircuit c;
    c.add_qudit_register("P", d);
    c.add_qudit_register("S", d);
    c.append(Gate::raw(unitary_with_column(psi.amp), {0, 1}));
    return StatePrep{c, 0, {1}};
}

/// -Z_D ⊗ I on an n-dimensional space whose most significant wire is the
/// decision qubit: -1 on the D = |0> block, +1 on the D = |1> block.
Matrix neg_zd(long n) {
    Matrix m = Matrix::Identity(n, n);
    m.topLeftCorner(n / 2, n / 2) *= -1.0;
    return m;
}

/// The channel obtained by loading |x>_S |0> into a circuit and treating its
/// trailing register as the channel input: N(sigma) = Tr_env[U(|x,0><x,0| ⊗
/// sigma)U†] truncated to the leading out_dim output factor.
QuantumChannel trailing_register_channel(const GateCircuit& c,
                                         const std::vector<long>& x,
                                         const std::string& in_name,
                                         long out_dim, const char* what) {
    const std::vector<Register>& regs = c.registers();
    if (regs.empty() || regs.back().name != in_name)
        throw BadCircuit(std::string(what) + ": expected trailing register \"" +
                         in_name + "\"");
    long in_dim = 1;
    for (long d : regs.back().wire_dims) in_dim *= d;
    const std::vector<long> digits = x_digits(c, x, what);
    const int in_first = c.wire(in_name, 0);
    GateCircuit cx;
    append_registers(cx, c);
    const std::vector<long>& dims = c.wire_dims();
    for (size_t w = 0; w < dims.size(); ++w) {
        if (digits[w] == 0) continue;
        if (static_cast<int>(w) >= in_first)
            throw BadCircuit(std::string(what) +
                             ": input digits touch the channel input register");
        cx.append(prep_gate(digits[w], dims[w], static_cast<int>(w)));
    }
    for (const Gate& g : c.gates()) cx.append(g);

    const Matrix u = compile(cx);
    const long total = u.cols();
    const long denv = total / in_dim;
    // compile() indexes columns as (env digits)·in_dim + input digit; the
    // dilation convention wants the channel input most significant.
    Matrix dil(total, total);
    for (long p = 0; p < in_dim; ++p)
        for (long e = 0; e < denv; ++e)
            dil.col(p * denv + e) = u.col(e * in_dim + p);
    return QuantumChannel(dil, in_dim, denv, out_dim);
}

// ----------------------------------------------------------------------------
// Two-message / three-message game shapes
// ----------------------------------------------------------------------------

struct GameDims {
    long ds = 0;   // S' dimension (leading sprime wires of u1)
    long dr1 = 0;  // R dimension (rest of u1's output)
    long drp = 0;  // R' dimension (u2's wires beyond S')
    Matrix u2;     // compiled decision unitary
};

GameDims check_game(const GateCircuit& u1, const GateCircuit& u2, int sprime,
                    const char* what) {
    const std::vector<long>& d1 = u1.wire_dims();
    const std::vector<long>& d2 = u2.wire_dims();
    if (sprime < 1 || sprime >= static_cast<int>(d1.size()))
        throw BadCircuit(std::string(what) +
                         ": sprime_wires must split the first circuit's output");
    if (static_cast<int>(d2.size()) <= sprime)
        throw BadCircuit(std::string(what) +
                         ": second circuit needs wires beyond S'");
    for (int i = 0; i < sprime; ++i)
        if (d1[static_cast<size_t>(i)] != d2[static_cast<size_t>(i)])
            throw BadCircuit(std::string(what) +
                             ": S' wire dimensions disagree between circuits");
    if (d2[0] != 2)
        throw BadCircuit(std::string(what) +
                         ": the second circuit's wire 0 must be the decision qubit");
    GameDims g;
    g.ds = 1;
    for (int i = 0; i < sprime; ++i) g.ds *= d1[static_cast<size_t>(i)];
    g.dr1 = u1.dim() / g.ds;
    g.u2 = compile(u2);
    g.drp = u2.dim() / g.ds;
    return g;
}

/// Involution U2† (-Z_D ⊗ I_G) U2 reordered to act on R' ⊗ S'.
Matrix game_involution(const GameDims& g) {
    const Matrix vinv = g.u2.adjoint() * neg_zd(g.u2.rows()) * g.u2;
    return permute_systems(vinv, {g.ds, g.drp}, {1, 0});
}

}  // namespace

// ============================================================================
// Instances
// ============================================================================

const char* problem_kind_name(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::StateBose: return "state_bose";
        case ProblemKind::StateHS: return "state_hs";
        case ProblemKind::ChannelBose: return "channel_bose";
        case ProblemKind::StateSymTD: return "state_sym_td";
        case ProblemKind::StateSymFid: return "state_sym_fid";
        case ProblemKind::StateBSE: return "state_bse";
        case ProblemKind::SepExtBose: return "sep_ext_bose";
        case ProblemKind::ChannelBSE: return "channel_bse";
        case ProblemKind::HamMaxSpec: return "ham_max_spec";
        case ProblemKind::HamAvgSpec: return "ham_avg_spec";
    }
    throw BadParams("problem_kind_name: invalid kind");
}

ProblemKind problem_kind_from_name(const std::string& name) {
    static const ProblemKind all[] = {
        ProblemKind::StateBose,  ProblemKind::StateHS,
        ProblemKind::ChannelBose, ProblemKind::StateSymTD,
        ProblemKind::StateSymFid, ProblemKind::StateBSE,
        ProblemKind::SepExtBose, ProblemKind::ChannelBSE,
        ProblemKind::HamMaxSpec, ProblemKind::HamAvgSpec,
    };
    for (ProblemKind k : all)
        if (name == problem_kind_name(k)) return k;
    throw SchemaError("unknown problem kind \"" + name + "\"");
}

double instance_range_max(const SymmetryInstance& inst) {
    switch (inst.kind) {
        case ProblemKind::StateHS:
            if (!inst.rep) throw BadParams("instance has no group representation");
            return gamma_bound(inst.rep->order());
        case ProblemKind::HamMaxSpec:
        case ProblemKind::HamAvgSpec:
            return 4.0;
        default:
            return 1.0;
    }
}

void validate_instance(const SymmetryInstance& inst) {
    if (!inst.rep) throw BadParams("instance has no group representation");
    const GroupRep& rep = *inst.rep;
    const char* kname = problem_kind_name(inst.kind);
    auto state = [&]() -> const StatePrep& {
        if (!inst.state)
            throw BadParams(std::string(kname) + ": instance needs a state preparation");
        return *inst.state;
    };
    auto channel = [&]() -> const QuantumChannel& {
        if (!inst.channel)
            throw BadParams(std::string(kname) + ": instance needs a channel");
        return *inst.channel;
    };
    switch (inst.kind) {
        case ProblemKind::StateBose:
        case ProblemKind::StateHS:
        case ProblemKind::StateSymTD:
        case ProblemKind::StateSymFid:
            if (state().dim() != rep.dim())
                throw ShapeError(std::string(kname) + ": state dimension " +
                                 std::to_string(state().dim()) +
                                 " does not match representation dimension " +
                                 std::to_string(rep.dim()));
            break;
        case ProblemKind::StateBSE:
        case ProblemKind::SepExtBose:
            if (state().dim() < 1 || rep.dim() % state().dim() != 0)
                throw ShapeError(std::string(kname) +
                                 ": representation space must factor as R ⊗ state");
            break;
        case ProblemKind::ChannelBose:
            if (channel().out_dim() != rep.dim())
                throw ShapeError(std::string(kname) + ": channel output " +
                                 std::to_string(channel().out_dim()) +
                                 " does not match representation dimension " +
                                 std::to_string(rep.dim()));
            break;
        case ProblemKind::ChannelBSE:
            if (rep.dim() % channel().out_dim() != 0)
                throw ShapeError(std::string(kname) +
                                 ": representation space must factor as R ⊗ channel output");
            break;
        case ProblemKind::HamMaxSpec:
        case ProblemKind::HamAvgSpec:
            if (inst.hamiltonian.rows() == 0)
                throw BadParams(std::string(kname) + ": instance needs a Hamiltonian");
            if (inst.hamiltonian.rows() != rep.dim() ||
                inst.hamiltonian.cols() != rep.dim())
                throw ShapeError(std::string(kname) +
                                 ": Hamiltonian does not match representation dimension");
            require_hermitian(inst.hamiltonian, "instance Hamiltonian");
            break;
    }
    const double range = instance_range_max(inst);
    if (!(inst.beta >= 0.0 && inst.beta < inst.alpha &&
          inst.alpha <= range + 1e-12))
        throw BadThresholds(std::string(kname) +
                            ": thresholds must satisfy 0 <= beta < alpha <= " +
                            std::to_string(range));
}

MeasureResult run_instance_measure(const SymmetryInstance& inst, int restarts,
                                   std::uint64_t seed) {
    validate_instance(inst);
    const GroupRep& rep = *inst.rep;
    switch (inst.kind) {
        case ProblemKind::StateBose:
            return bose_symmetry(inst.state->realize().rho, rep);
        case ProblemKind::StateHS:
            return hs_asymmetry(inst.state->realize().rho, rep);
        case ProblemKind::ChannelBose:
            return channel_bose_max(*inst.channel, rep);
        case ProblemKind::StateSymTD:
            return min_td_sym(inst.state->realize().rho, rep);
        case ProblemKind::StateSymFid:
            return max_fid_sym(inst.state->realize().rho, rep);
        case ProblemKind::StateBSE:
            return bse_fidelity(inst.state->realize().rho, rep, restarts, seed);
        case ProblemKind::SepExtBose:
            return sep_ext_bose(inst.state->realize().rho, rep, restarts, seed);
        case ProblemKind::ChannelBSE:
            return channel_bse(*inst.channel, rep, restarts, seed);
        case ProblemKind::HamMaxSpec:
            return ham_max_spec(inst.hamiltonian, inst.time, rep);
        case ProblemKind::HamAvgSpec:
            return ham_avg_spec(inst.hamiltonian, inst.time, rep);
    }
    throw BadParams("run_instance_measure: invalid kind");
}

// ============================================================================
// Source problems
// ============================================================================

void validate_bqp(const BQPCircuit& q) {
    if (!q.circuit.has_register("S") || !q.circuit.has_register("A"))
        throw BadCircuit("BQPCircuit: expected registers \"S\" and \"A\"");
    if (q.circuit.wire_dims().empty() || q.circuit.wire_dims()[0] != 2)
        throw BadCircuit("BQPCircuit: wire 0 must be the decision qubit");
    (void)x_digits(q.circuit, q.input_x, "BQPCircuit");
}

double bqp_accept_probability(const BQPCircuit& q) {
    validate_bqp(q);
    const long base =
        q.circuit.basis_index(x_digits(q.circuit, q.input_x, "BQPCircuit"));
    const Vector out = apply(q.circuit, base).amp;
    const long half = out.size() / 2;
    return out.tail(half).squaredNorm();
}

// ============================================================================
// Builders
// ============================================================================

SymmetryInstance bqp_to_bose(const BQPCircuit& q) {
    validate_bqp(q);
    SymmetryInstance inst;
    inst.kind = ProblemKind::StateBose;
    inst.state = StatePrep{
        q.circuit,
        q.circuit.basis_index(x_digits(q.circuit, q.input_x, "bqp_to_bose")),
        {0}};
    inst.rep = c2_from_unitary(neg_zd(2));
    return inst;
}

SymmetryInstance bqp_to_hs(const BQPCircuit& q) {
    validate_bqp(q);
    GateCircuit ext;
    append_registers(ext, q.circuit);
    std::string cname = "C";
    while (ext.has_register(cname)) cname += "x";
    ext.add_register(cname, 1);
    ext.append_all(q.circuit.gates());
    const int cw = ext.wire(cname, 0);
    const GateCircuit conj =
        conjugate_with(ext, {Gate::two(GateKind::CX, 0, cw)});

    GateCircuit id;  // the untouched input state |x>_S |0>_{A C}
    append_registers(id, ext);
    SymmetryInstance inst;
    inst.kind = ProblemKind::StateHS;
    inst.state =
        StatePrep{id, id.basis_index(x_digits(id, q.input_x, "bqp_to_hs")), {}};
    inst.rep = c2_from_unitary(compile(conj));
    return inst;
}

SymmetryInstance qma_to_channel_bose(const GateCircuit& q,
                                     const std::vector<long>& x) {
    if (!q.has_register("S") || !q.has_register("A") || !q.has_register("P"))
        throw BadCircuit(
            "qma_to_channel_bose: expected registers \"S\", \"A\", \"P\"");
    if (q.wire_dims()[0] != 2)
        throw BadCircuit("qma_to_channel_bose: wire 0 must be the decision qubit");
    SymmetryInstance inst;
    inst.kind = ProblemKind::ChannelBose;
    inst.channel =
        trailing_register_channel(q, x, "P", 2, "qma_to_channel_bose");
    inst.rep = c2_from_unitary(neg_zd(2));
    return inst;
}

SymmetryInstance qsd_to_symtd(const StatePrep& c0, const StatePrep& c1) {
    if (c0.circuit.wire_dims() != c1.circuit.wire_dims())
        throw ShapeError("qsd_to_symtd: preparations act on different wire layouts");
    const std::vector<int> kept = c0.kept_wires();
    if (kept != c1.kept_wires())
        throw ShapeError("qsd_to_symtd: preparations keep different wires");
    const std::vector<long>& dims = c0.circuit.wire_dims();
    if (c0.input_index < 0 || c0.input_index >= c0.circuit.dim() ||
        c1.input_index < 0 || c1.input_index >= c1.circuit.dim())
        throw BadIndex("qsd_to_symtd: preparation input index out of range");

    GateCircuit c;
    std::string f = "F", fc = "Fc";
    while (c0.circuit.has_register(f)) f += "x";
    while (c0.circuit.has_register(fc)) fc += "x";
    c.add_register(f, 1);
    c.add_register(fc, 1);
    append_registers(c, c0.circuit);
    const int off = 2;

    c.append(Gate::simple(GateKind::H, 0));
    c.append(Gate::two(GateKind::CX, 0, 1));
    auto branch = [&](const StatePrep& p) {
        const std::vector<long> digs = digits_of(p.input_index, dims);
        for (size_t w = 0; w < dims.size(); ++w)
            if (digs[w] != 0)
                c.append(Gate::controlled(
                    prep_gate(digs[w], dims[w], static_cast<int>(w) + off), {0}));
        for (const Gate& g : p.circuit.gates())
            c.append(Gate::controlled(shifted(g, off), {0}));
    };
    c.append(Gate::simple(GateKind::X, 0));
    branch(c0);
    c.append(Gate::simple(GateKind::X, 0));
    branch(c1);

    std::vector<int> keep{0};
    for (int w : kept) keep.push_back(w + off);

    const long db = c0.dim();
    Matrix xf(2, 2);
    xf << 0.0, 1.0, 1.0, 0.0;
    const Matrix eye = Matrix::Identity(db, db);
    const Matrix v = tensor_product(xf, eye);

    SymmetryInstance inst;
    inst.kind = ProblemKind::StateSymTD;
    inst.state = StatePrep{c, 0, keep};
    inst.rep = c2_from_unitary(v);
    inst.alpha = 1.0 / 3.0;
    inst.beta = 1.0 / 6.0;
    return inst;
}

SymmetryInstance symtd_to_symfid(const SymmetryInstance& inst) {
    if (inst.kind != ProblemKind::StateSymTD)
        throw BadParams("symtd_to_symfid: input must be a state_sym_td instance");
    if (!(inst.beta >= 0.0 && inst.beta < inst.alpha && inst.alpha <= 1.0))
        throw BadThresholds("symtd_to_symfid: need 0 <= beta < alpha <= 1");
    const double a = (1.0 - inst.beta) * (1.0 - inst.beta);
    const double b = 1.0 - inst.alpha * inst.alpha;
    if (!(b < a))
        throw BadThresholds(
            "symtd_to_symfid: mapped thresholds collapse; widen the promise gap");
    SymmetryInstance out = inst;
    out.kind = ProblemKind::StateSymFid;
    out.alpha = a;
    out.beta = b;
    return out;
}

SymmetryInstance qip2_to_bse(const GateCircuit& u1, const GateCircuit& u2,
                             const std::vector<long>& x, int sprime_wires) {
    const GameDims g = check_game(u1, u2, sprime_wires, "qip2_to_bse");
    if (g.drp != g.dr1)
        throw BadCircuit(
            "qip2_to_bse: prover message registers R and R' must have equal "
            "dimension");
    SymmetryInstance inst;
    inst.kind = ProblemKind::StateBSE;
    std::vector<int> keep(static_cast<size_t>(sprime_wires));
    std::iota(keep.begin(), keep.end(), 0);
    inst.state = StatePrep{
        u1, u1.basis_index(x_digits(u1, x, "qip2_to_bse")), keep};
    inst.rep = c2_from_unitary(game_involution(g));
    return inst;
}

SymmetryInstance qip3_to_channel_bse(const GateCircuit& u1,
                                     const GateCircuit& u2,
                                     const std::vector<long>& x,
                                     int sprime_wires) {
    const GameDims g = check_game(u1, u2, sprime_wires, "qip3_to_channel_bse");
    SymmetryInstance inst;
    inst.kind = ProblemKind::ChannelBSE;
    inst.channel =
        trailing_register_channel(u1, x, "R", g.ds, "qip3_to_channel_bse");
    inst.rep = c2_from_unitary(game_involution(g));
    return inst;
}

SymmetryInstance qipeb2_to_sepext(const GateCircuit& v,
                                  const PureState& psi_rs) {
    const std::vector<Register>& regs = v.registers();
    if (regs.size() < 2 || regs.back().name != "S")
        throw BadCircuit(
            "qipeb2_to_sepext: verifier needs a trailing register \"S\" after "
            "its R' wires");
    if (v.wire_dims()[0] != 2)
        throw BadCircuit("qipeb2_to_sepext: wire 0 must be the decision qubit");
    long ds = 1;
    for (long d : regs.back().wire_dims) ds *= d;
    const long dpsi = psi_rs.amp.size();
    if (dpsi % ds != 0)
        throw ShapeError(
            "qipeb2_to_sepext: shared state does not factor over the "
            "verifier's S register");
    const long dr = dpsi / ds;

    const Matrix vm = compile(v);
    const Matrix w = vm.adjoint() * neg_zd(v.dim()) * vm;

    GateCircuit c;
    SymmetryInstance inst;
    inst.kind = ProblemKind::SepExtBose;
    if (dr >= 2) {
        c.add_qudit_register("R", dr);
        c.add_qudit_register("S", ds);
        c.append(Gate::raw(unitary_with_column(psi_rs.amp), {0, 1}));
        inst.state = StatePrep{c, 0, {1}};
    } else {
        c.add_qudit_register("S", ds);
        c.append(Gate::raw(unitary_with_column(psi_rs.amp), {0}));
        inst.state = StatePrep{c, 0, {}};
    }
    inst.rep = c2_from_unitary(w);
    return inst;
}

std::pair<double, double> polarized_thresholds(double alpha, double beta,
                                               int n) {
    if (n < 1) throw BadParams("polarized_thresholds: n must be >= 1");
    if (!(beta >= 0.0 && beta < alpha && alpha <= 1.0))
        throw BadThresholds("polarized_thresholds: need 0 <= beta < alpha <= 1");
    const double a = 0.25 * (1.0 - std::ldexp(1.0, -n));
    const double b = std::ldexp(1.0, -(n + 1));
    if (!(b < a))
        throw BadThresholds(
            "polarized_thresholds: n too small to separate the thresholds");
    return {a, b};
}

// ============================================================================
// Verification
// ============================================================================

namespace {

struct TrialOutcome {
    double dev = 0.0;
    bool ok = false;
};

void add_haar_pairs(GateCircuit& c, CounterRng& rng, int count) {
    const int n = c.num_wires();
    for (int k = 0; k < count; ++k) {
        if (n == 1) {
            c.append(Gate::raw(haar_random_unitary(c.wire_dims()[0], rng), {0}));
            continue;
        }
        int w1 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        int w2 = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1)));
        if (w2 >= w1) ++w2;
        const long d = c.wire_dims()[static_cast<size_t>(w1)] *
                       c.wire_dims()[static_cast<size_t>(w2)];
        c.append(Gate::raw(haar_random_unitary(d, rng), {w1, w2}));
    }
}

BQPCircuit random_bqp(CounterRng& rng, int max_sa) {
    const int s = 1 + static_cast<int>(rng.next_below(
                          static_cast<std::uint64_t>(std::min(2, max_sa - 1))));
    const int a = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(
                          std::max(1, std::min(2, max_sa - s)))));
    BQPCircuit q;
    q.circuit.add_register("S", s);
    q.circuit.add_register("A", a);
    add_haar_pairs(q.circuit, rng, 2 + static_cast<int>(rng.next_below(3)));
    for (int i = 0; i < s; ++i)
        q.input_x.push_back(static_cast<long>(rng.next_below(2)));
    return q;
}

TrialOutcome trial_bqp_to_bose(int, CounterRng rng) {
    const BQPCircuit q = random_bqp(rng, 4);
    const SymmetryInstance inst = bqp_to_bose(q);
    validate_instance(inst);
    const double p = bqp_accept_probability(q);
    const double m = run_instance_measure(inst).value;
    const double dev = std::abs(m - p);
    return {dev, dev <= 1e-10};
}

TrialOutcome trial_bqp_to_hs(int, CounterRng rng) {
    const BQPCircuit q = random_bqp(rng, 3);
    const SymmetryInstance inst = bqp_to_hs(q);
    validate_instance(inst);
    const double p_rej = 1.0 - bqp_accept_probability(q);
    const double want = 1.0 - p_rej * p_rej;
    const double m = run_instance_measure(inst).value;
    const double dev = std::abs(m - want);
    return {dev, dev <= 1e-9};
}

TrialOutcome trial_qma(int, CounterRng rng) {
    GateCircuit c;
    c.add_register("S", 1);
    c.add_register("A", 1);
    c.add_register("P", 1 + static_cast<int>(rng.next_below(2)));
    add_haar_pairs(c, rng, 2 + static_cast<int>(rng.next_below(3)));
    const std::vector<long> x{static_cast<long>(rng.next_below(2))};

    const SymmetryInstance inst = qma_to_channel_bose(c, x);
    validate_instance(inst);
    const MeasureResult mr = run_instance_measure(inst);

    // Independent best-prover value by direct circuit simulation.
    const long dp = inst.channel->in_dim();
    const long n = c.dim();
    const long base = c.basis_index(x_digits(c, x, "verify"));
    Matrix wb(n / 2, dp);
    for (long p = 0; p < dp; ++p)
        wb.col(p) = apply(c, base + p).amp.tail(n / 2);
    const Matrix m1 = wb.adjoint() * wb;
    const TopEig e = top_eig(Matrix(0.5 * (m1 + m1.adjoint())));
    double dev = std::abs(mr.value - e.value);

    for (int k = 0; k < 1000; ++k) {
        const Vector ps = haar_random_state(dp, rng);
        dev = std::max(dev, (wb * ps).squaredNorm() - mr.value);
    }
    if (mr.opt_state.size() == dp)
        dev = std::max(dev,
                       std::abs((wb * mr.opt_state).squaredNorm() - mr.value));
    return {dev, dev <= 1e-9};
}

TrialOutcome trial_qsd(int t, CounterRng rng) {
    const int n = 2 + static_cast<int>(rng.next_below(2));
    GateCircuit base;
    base.add_register("B", n);
    std::vector<int> keep;
    const std::uint64_t mask = 1 + rng.next_below((1ull << n) - 1);
    for (int w = 0; w < n; ++w)
        if (mask & (1ull << w)) keep.push_back(w);
    auto make = [&]() {
        GateCircuit c = base;
        add_haar_pairs(c, rng, 1 + static_cast<int>(rng.next_below(3)));
        return StatePrep{c, static_cast<long>(rng.next_below(1ull << n)), keep};
    };
    const StatePrep p0 = make();
    const StatePrep p1 = (t % 5 == 4) ? p0 : make();

    const SymmetryInstance inst = qsd_to_symtd(p0, p1);
    validate_instance(inst);
    const Matrix tau = inst.state->realize().rho;
    const Matrix w0 = p0.realize().rho;
    const Matrix w1 = p1.realize().rho;
    const double want = 0.5 * trace_distance(w0, w1);
    const double got = twirl_td(tau, *inst.rep);
    double dev = std::abs(got - want);
    bool ok = dev <= 1e-10;

    // The twirling distance sandwiches the closest-symmetric-state distance:
    // m <= twirl <= 2 m.  The SDP cost grows steeply with dimension, so the
    // sandwich runs on the instances up to dimension 8; the closed-form
    // identity above covers every size.
    if (tau.rows() <= 8) {
        const double m = min_td_sym(tau, *inst.rep).value;
        const double excess = std::max(m - got, got - 2.0 * m);
        ok = ok && excess <= 1e-7;
        dev = std::max(dev, excess);
    }
    return {dev, ok};
}

TrialOutcome trial_symfid(int, CounterRng rng) {
    const Matrix u = haar_random_unitary(4, rng);
    Matrix d = Matrix::Identity(4, 4);
    d(2, 2) = -1.0;
    d(3, 3) = -1.0;
    const Matrix v = u * d * u.adjoint();
    const GroupRep rep = c2_from_unitary(v);
    const Matrix rho =
        random_density(4, rng, 1 + static_cast<long>(rng.next_below(4)));

    SymmetryInstance inst;
    inst.kind = ProblemKind::StateSymTD;
    inst.state = state_prep_of(rho);
    inst.rep = rep;
    inst.alpha = 0.85 + 0.14 * rng.next_double();
    inst.beta = 0.01 + 0.15 * rng.next_double();
    validate_instance(inst);

    const SymmetryInstance out = symtd_to_symfid(inst);
    validate_instance(out);
    double dev =
        std::abs(out.alpha - (1.0 - inst.beta) * (1.0 - inst.beta)) +
        std::abs(out.beta - (1.0 - inst.alpha * inst.alpha));
    bool ok = dev == 0.0 && out.kind == ProblemKind::StateSymFid;

    // Monotonicity: raising the distance threshold lowers the mapped
    // fidelity threshold.
    SymmetryInstance inst2 = inst;
    inst2.alpha = std::min(1.0, inst.alpha + 0.01);
    ok = ok && symtd_to_symfid(inst2).beta <= out.beta;

    // Measure-level soundness of the map on this instance's state.
    const double td = min_td_sym(rho, rep).value;
    const double fid = max_fid_sym(rho, rep).value;
    const double excess = fid - (1.0 - td * td);
    ok = ok && excess <= 1e-7;
    dev = std::max(dev, excess);
    return {dev, ok};
}

TrialOutcome trial_qip2(int t, CounterRng rng) {
    const bool big = (t % 2) == 1;
    GateCircuit u1;
    u1.add_register("S", 1);
    u1.add_register("A", big ? 2 : 1);
    add_haar_pairs(u1, rng, 2 + static_cast<int>(rng.next_below(2)));
    GateCircuit u2;
    u2.add_register("Sp", 1);
    u2.add_register("Rp", big ? 2 : 1);
    add_haar_pairs(u2, rng, 2 + static_cast<int>(rng.next_below(2)));
    const std::vector<long> x{static_cast<long>(rng.next_below(2))};

    const SymmetryInstance inst = qip2_to_bse(u1, u2, x, 1);
    validate_instance(inst);
    const MeasureResult mr = run_instance_measure(inst, 6, rng.next_u64());
    const double p = run_exact(qip2_protocol(u1, u2, x, 1),
                               ProverStrategy::optimized(24, rng.next_u64()));
    const double dev = std::abs(mr.value - p);
    return {dev, dev <= 1e-5};
}

TrialOutcome trial_qip3(int, CounterRng rng) {
    for (int attempt = 0; attempt < 12; ++attempt) {
        CounterRng gen = rng.derive(100 + static_cast<std::uint64_t>(attempt));
        GateCircuit u1;
        u1.add_register("S", 1);
        u1.add_register("A", 1);
        u1.add_register("R", 1);
        add_haar_pairs(u1, gen, 2 + static_cast<int>(gen.next_below(2)));
        GateCircuit u2;
        u2.add_register("Sp", 1);
        u2.add_register("Rp", 1);
        if (attempt + 1 == 12) {
            u2.append(Gate::simple(GateKind::X, 0));  // degenerate fallback
        } else {
            add_haar_pairs(u2, gen, 2);
        }
        const std::vector<long> x{static_cast<long>(gen.next_below(2))};

        const SymmetryInstance inst = qip3_to_channel_bse(u1, u2, x, 1);
        validate_instance(inst);
        const MeasureResult mr = run_instance_measure(inst, 4, gen.next_u64());
        // Keep only instances whose value carries a tight dual certificate, so
        // the comparison is against a certified global optimum.
        if (mr.upper - mr.value > 2e-5 && attempt + 1 < 12) continue;
        const double p = run_exact(qip3_protocol(u1, u2, x, 1),
                                   ProverStrategy::optimized(24, gen.next_u64()));
        const double dev = std::abs(mr.value - p);
        return {dev, dev <= 1e-4};
    }
    return {1.0, false};  // unreachable
}

TrialOutcome trial_qipeb2(int t, CounterRng rng) {
    if (t % 4 == 3) {
        // Planted product optimum: the verifier accepts exactly the slab
        // phi* ⊗ S, so a prover that always sends phi* wins with certainty.
        const Vector phi = haar_random_state(2, rng);
        Vector perp(2);
        perp << -std::conj(phi(1)), std::conj(phi(0));
        const Vector e0 = Vector::Unit(2, 0);
        const Vector e1 = Vector::Unit(2, 1);
        Matrix a(4, 4);
        a.col(0) = tensor_product(phi, e0);
        a.col(1) = tensor_product(phi, e1);
        a.col(2) = tensor_product(perp, e0);
        a.col(3) = tensor_product(perp, e1);
        Matrix b = Matrix::Zero(4, 4);
        b.col(0) = Vector::Unit(4, 2);
        b.col(1) = Vector::Unit(4, 3);
        b.col(2) = Vector::Unit(4, 0);
        b.col(3) = Vector::Unit(4, 1);
        const Matrix v = b * a.adjoint();
        GateCircuit vc;
        vc.add_register("Rp", 1);
        vc.add_register("S", 1);
        vc.append(Gate::raw(v, {0, 1}));
        const long dr = 2 + 2 * static_cast<long>(rng.next_below(2));
        const PureState psi(haar_random_state(dr * 2, rng));
        const SymmetryInstance inst = qipeb2_to_sepext(vc, psi);
        validate_instance(inst);
        const MeasureResult mr = run_instance_measure(inst, 4, rng.next_u64());
        const double dev = std::abs(mr.value - 1.0);
        return {dev, dev <= 1e-6};
    }
    GateCircuit vc;
    vc.add_register("Rp", 1);
    vc.add_register("S", 1);
    add_haar_pairs(vc, rng, 2);
    const long dr = 2 + static_cast<long>(rng.next_below(3));
    const PureState psi(haar_random_state(dr * 2, rng));

    const SymmetryInstance inst = qipeb2_to_sepext(vc, psi);
    validate_instance(inst);
    const MeasureResult mr = run_instance_measure(inst, 4, rng.next_u64());
    const double p = run_exact(sep_ext_protocol(*inst.state, *inst.rep),
                               ProverStrategy::optimized(4, rng.next_u64()));
    const Matrix rho = inst.state->realize().rho;
    const double bse =
        bse_fidelity(rho, *inst.rep, 5, rng.next_u64()).value;
    double dev = std::abs(mr.value - p);
    const bool ok = dev <= 1e-5 && mr.value <= bse + 1e-6 && p <= bse + 1e-6;
    dev = std::max({dev, mr.value - bse, p - bse});
    return {dev, ok};
}

}  // namespace

std::vector<std::string> reduction_kinds() {
    return {"bqp_to_bose",    "bqp_to_hs",           "qma_to_channel_bose",
            "qsd_to_symtd",   "symtd_to_symfid",     "qip2_to_bse",
            "qip3_to_channel_bse", "qipeb2_to_sepext"};
}

VerifyReport verify_reduction(const std::string& kind, int trials,
                              std::uint64_t seed) {
    if (trials < 1) throw BadParams("verify_reduction: trials must be >= 1");
    TrialOutcome (*fn)(int, CounterRng) = nullptr;
    if (kind == "bqp_to_bose") fn = trial_bqp_to_bose;
    else if (kind == "bqp_to_hs") fn = trial_bqp_to_hs;
    else if (kind == "qma_to_channel_bose") fn = trial_qma;
    else if (kind == "qsd_to_symtd") fn = trial_qsd;
    else if (kind == "symtd_to_symfid") fn = trial_symfid;
    else if (kind == "qip2_to_bse") fn = trial_qip2;
    else if (kind == "qip3_to_channel_bse") fn = trial_qip3;
    else if (kind == "qipeb2_to_sepext") fn = trial_qipeb2;
    else
        throw BadParams("verify_reduction: unknown reduction kind \"" + kind +
                        "\"");

    VerifyReport report;
    report.kind = kind;
    report.trials = trials;
    report.seed = seed;
    const CounterRng root(seed);
    for (int t = 0; t < trials; ++t) {
        const TrialOutcome out = fn(t, root.derive(static_cast<std::uint64_t>(t)));
        report.max_deviation = std::max(report.max_deviation, out.dev);
        if (!out.ok) ++report.failures;
    }
    return report;
}

}  // namespace symkit
