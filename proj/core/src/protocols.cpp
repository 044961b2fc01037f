#include "symkit/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>
#include <utility>

#include "symkit/measures.hpp"
#include "symkit/numerics.hpp"
#include "symkit/optimize.hpp"
#include "symkit/rng.hpp"

namespace symkit {

const char* protocol_kind_name(ProtocolKind k) {
    switch (k) {
        case ProtocolKind::BoseTest: return "BoseTest";
        case ProtocolKind::HSSwapTest: return "HSSwapTest";
        case ProtocolKind::UhlmannFid: return "UhlmannFid";
        case ProtocolKind::SepExtEB: return "SepExtEB";
        case ProtocolKind::HamQMA: return "HamQMA";
        case ProtocolKind::HamQAM: return "HamQAM";
        case ProtocolKind::QIP2Generic: return "QIP2Generic";
        case ProtocolKind::QIP3Generic: return "QIP3Generic";
    }
    throw BadParams("protocol_kind_name: unknown kind");
}

ProverStrategy ProverStrategy::optimized(int restarts, std::uint64_t seed) {
    ProverStrategy s;
    s.kind = Kind::Optimized;
    s.restarts = restarts;
    s.seed = seed;
    return s;
}

ProverStrategy ProverStrategy::fixed_isometry(Matrix v) {
    ProverStrategy s;
    s.kind = Kind::FixedIsometry;
    s.isometry = std::move(v);
    return s;
}

ProverStrategy ProverStrategy::fixed_eb(EBChannel channel) {
    ProverStrategy s;
    s.kind = Kind::FixedEBChannel;
    s.eb = std::move(channel);
    return s;
}

ProverStrategy ProverStrategy::fixed_states(std::vector<Vector> per_g) {
    ProverStrategy s;
    s.kind = Kind::FixedStateFamily;
    s.states = std::move(per_g);
    return s;
}

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

const StatePrep& need_prep(const Protocol& p, const char* what) {
    if (!p.prep) throw BadParams(std::string(what) + ": protocol has no state preparation");
    return *p.prep;
}

const GroupRep& need_rep(const Protocol& p, const char* what) {
    if (!p.rep) throw BadParams(std::string(what) + ": protocol has no representation");
    return *p.rep;
}

std::string fresh_name(const GateCircuit& taken, const std::string& base) {
    if (!taken.has_register(base)) return base;
    for (int i = 1;; ++i) {
        std::string name = base + std::to_string(i);
        if (!taken.has_register(name)) return name;
    }
}

Matrix gaussian_matrix(long rows, long cols, CounterRng& rng) {
    Matrix m(rows, cols);
    for (long j = 0; j < cols; ++j)
        for (long i = 0; i < rows; ++i)
            m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    return m;
}

// ============================================================================
// BoseTest: group register (most significant), QFT, controlled-U(g)
// multiplexer on the kept wires, inverse QFT, accept on index outcome 0.
// ============================================================================

double exact_bose_test(const Protocol& p) {
    const StatePrep& prep = need_prep(p, "BoseTest");
    const GroupRep& rep = need_rep(p, "BoseTest");
    if (rep.dim() != prep.dim())
        throw ShapeError("BoseTest: representation dimension does not match the "
                         "prepared state");
    GateCircuit c;
    c.add_qudit_register(fresh_name(prep.circuit, "G"), rep.order());
    append_registers(c, prep.circuit);
    for (const Gate& g : prep.circuit.gates()) c.append(shifted(g, 1));

    const long dk = rep.dim();
    Matrix mux = Matrix::Zero(rep.order() * dk, rep.order() * dk);
    for (int g = 0; g < rep.order(); ++g)
        mux.block(g * dk, g * dk, dk, dk) = rep.element(g);
    std::vector<int> targets{0};
    for (int w : prep.kept_wires()) targets.push_back(w + 1);

    c.append(Gate::qft(0));
    c.append(Gate::raw(mux, targets));
    c.append(Gate::adjoint(Gate::qft(0)));

    const Vector out = apply(c, prep.input_index).amp;
    const long block = prep.circuit.dim();
    double acc = 0.0;
    for (long i = 0; i < block; ++i) acc += std::norm(out(i));
    return clamp01(acc);
}

// ============================================================================
// HSSwapTest: fair coin, then a swap test of the prepared state against
// itself (accept ancilla 0) or against a uniformly twirled copy (accept 1).
// ============================================================================

double exact_hs_swap(const Protocol& p) {
    const StatePrep& prep = need_prep(p, "HSSwapTest");
    const GroupRep& rep = need_rep(p, "HSSwapTest");
    if (rep.dim() != prep.dim())
        throw ShapeError("HSSwapTest: representation dimension does not match the "
                         "prepared state");
    const Matrix rho = prep.realize().rho;
    const long d = rho.rows();
    const std::vector<long> kd = prep.kept_dims();
    const int k = static_cast<int>(kd.size());

    GateCircuit c;
    c.add_register("C", 1);
    for (int i = 0; i < k; ++i) c.add_qudit_register("A" + std::to_string(i), kd[static_cast<size_t>(i)]);
    for (int i = 0; i < k; ++i) c.add_qudit_register("B" + std::to_string(i), kd[static_cast<size_t>(i)]);
    c.append(Gate::simple(GateKind::H, 0));
    for (int i = 0; i < k; ++i)
        c.append(Gate::controlled(Gate::swap(1 + i, 1 + k + i), {0}));
    c.append(Gate::simple(GateKind::H, 0));
    const Matrix u = compile(c);

    Matrix anc = Matrix::Zero(2, 2);
    anc(0, 0) = 1.0;
    auto branch = [&](const Matrix& sigma, int outcome) {
        Matrix in = tensor_product(anc, tensor_product(rho, sigma));
        Matrix out = u * in * u.adjoint();
        const long base = outcome * d * d;
        double acc = 0.0;
        for (long i = 0; i < d * d; ++i) acc += out(base + i, base + i).real();
        return acc;
    };

    const double p_same = branch(rho, 0);
    double p_twirl = 0.0;
    for (int g = 0; g < rep.order(); ++g) {
        const Matrix& ug = rep.element(g);
        p_twirl += branch(ug * rho * ug.adjoint(), 1);
    }
    p_twirl /= rep.order();
    return clamp01(0.5 * p_same + 0.5 * p_twirl);
}

// ============================================================================
// UhlmannFid: purification overlap game.  The verifier's target is the
// canonical purification of the twirled state obtained by running the
// preparation once more through a group-index register; the prover maps the
// original purifying system into the enlarged one.
// ============================================================================

struct PrepSplit {
    Vector psi;   // full preparation output, reordered to (traced ⊗ kept)
    long dim_r;   // traced factor
    long dim_s;   // kept factor
};

PrepSplit split_purification(const StatePrep& prep) {
    const Vector full = apply(prep.circuit, prep.input_index).amp;
    const std::vector<int> kept = prep.kept_wires();
    const int n = prep.circuit.num_wires();
    std::vector<char> is_kept(static_cast<size_t>(n), 0);
    for (int w : kept) is_kept[static_cast<size_t>(w)] = 1;
    std::vector<int> order;
    for (int w = 0; w < n; ++w)
        if (!is_kept[static_cast<size_t>(w)]) order.push_back(w);
    for (int w : kept) order.push_back(w);
    PrepSplit out;
    out.psi = permute_systems(full, prep.circuit.wire_dims(), order);
    out.dim_s = prep.dim();
    out.dim_r = prep.circuit.dim() / out.dim_s;
    return out;
}

double exact_uhlmann(const Protocol& p, const ProverStrategy& s) {
    const StatePrep& prep = need_prep(p, "UhlmannFid");
    const GroupRep& rep = need_rep(p, "UhlmannFid");
    if (rep.dim() != prep.dim())
        throw ShapeError("UhlmannFid: representation dimension does not match the "
                         "prepared state");
    const PrepSplit ps = split_purification(prep);
    const long dr = ps.dim_r, ds = ps.dim_s;
    const int n = rep.order();
    const long dr_big = n * dr;

    // |psi_bar> on C ⊗ R'' ⊗ S: group index, then U(g) on the kept factor.
    Vector bar(dr_big * ds);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const Matrix m_psi = as_matrix(ps.psi, dr, ds);
    for (int g = 0; g < n; ++g) {
        Matrix mg = m_psi * rep.element(g).transpose();  // (I ⊗ U(g)) |psi>
        bar.segment(g * dr * ds, dr * ds) = as_vector(mg) * scale;
    }

    const Matrix k_op = m_psi * as_matrix(bar, dr_big, ds).adjoint();  // dr x dr_big

    Matrix v;
    if (s.kind == ProverStrategy::Kind::FixedIsometry) {
        if (s.isometry.rows() != dr_big || s.isometry.cols() != dr)
            throw ShapeError("UhlmannFid: prover isometry must map the purifying "
                             "system into (group index ⊗ purifying system)");
        require_isometry(s.isometry, "UhlmannFid prover");
        v = s.isometry;
    } else if (s.kind == ProverStrategy::Kind::Optimized) {
        // Polar factor of the overlap operator: the exact optimum, achieving
        // the squared trace norm of k_op (the fidelity with the twirl).
        v = polar_isometry(k_op.adjoint());
    } else {
        throw BadParams("UhlmannFid: strategy must be FixedIsometry or Optimized");
    }

    const Vector lifted = as_vector(v * m_psi);  // (V ⊗ I_S)|psi>
    const Complex overlap = bar.dot(lifted);
    return clamp01(std::norm(overlap));
}

// ============================================================================
// SepExtEB: canonical purification, prover's entanglement-breaking channel
// on the purifying system, Fourier test of the joint output against rep.
// ============================================================================

double exact_sep_ext(const Protocol& p, const ProverStrategy& s) {
    const StatePrep& prep = need_prep(p, "SepExtEB");
    const GroupRep& rep = need_rep(p, "SepExtEB");
    const Matrix rho = prep.realize().rho;
    const long ds = rho.rows();
    if (ds < 1 || rep.dim() % ds != 0)
        throw ShapeError("SepExtEB: representation dimension does not factor as "
                         "R ⊗ S over the prepared state");
    const long dim_r = rep.dim() / ds;

    EBChannel eb = [&]() -> EBChannel {
        if (s.kind == ProverStrategy::Kind::FixedEBChannel) {
            if (!s.eb) throw BadParams("SepExtEB: FixedEBChannel strategy has no channel");
            return *s.eb;
        }
        if (s.kind == ProverStrategy::Kind::Optimized) {
            SepExtWitness w = sep_ext_witness(rho, rep, s.restarts, s.seed);
            return EBChannel(w.povm, w.states);
        }
        throw BadParams("SepExtEB: strategy must be FixedEBChannel or Optimized");
    }();
    if (eb.in_dim() != ds || eb.out_dim() != dim_r)
        throw ShapeError("SepExtEB: prover channel must map the purifying system "
                         "(dim S) to the reference factor");

    const PureState pure = purify(DensityMatrix(rho));   // R'' ⊗ S, dim R'' = dim S
    const Matrix omega = eb.extend(pure.density(), ds);  // R ⊗ S
    return clamp01((projector(rep) * omega).trace().real());
}

// ============================================================================
// HamQMA / HamQAM: control in |+>, e^{iHt}, controlled-U(g)†, e^{-iHt},
// controlled-U(g), accept on |-> of the control.
// ============================================================================

double ham_branch_accept(const Matrix& w, const Vector& psi) {
    // Controls act diagonally on the control branches: |0> carries identity,
    // |1> carries W = U(g) e^{-iHt} U(g)† e^{iHt}; accepting on |-> leaves
    // ||(I - W)psi||^2 / 4.
    return clamp01(0.25 * (psi - w * psi).squaredNorm());
}

double exact_ham(const Protocol& p, const ProverStrategy& s, bool max_variant) {
    const GroupRep& rep = need_rep(p, max_variant ? "HamQMA" : "HamQAM");
    require_hermitian(p.hamiltonian, "ham protocol");
    if (p.hamiltonian.rows() != rep.dim())
        throw ShapeError("ham protocol: Hamiltonian dimension does not match the "
                         "representation");
    const long d = rep.dim();
    const Matrix evo = expm_hermitian(p.hamiltonian, p.time);
    const Matrix evo_back = expm_hermitian(p.hamiltonian, -p.time);

    if (s.kind != ProverStrategy::Kind::Optimized &&
        s.kind != ProverStrategy::Kind::FixedStateFamily)
        throw BadParams("ham protocol: strategy must be FixedStateFamily or Optimized");
    if (s.kind == ProverStrategy::Kind::FixedStateFamily &&
        static_cast<int>(s.states.size()) != rep.order())
        throw BadParams("ham protocol: FixedStateFamily needs one state per group "
                        "element");

    double best = 0.0, sum = 0.0;
    for (int g = 0; g < rep.order(); ++g) {
        const Matrix w = rep.element(g) * evo * rep.element(g).adjoint() * evo_back;
        Vector psi;
        if (s.kind == ProverStrategy::Kind::FixedStateFamily) {
            psi = PureState(s.states[static_cast<size_t>(g)]).amp;
            if (psi.size() != d)
                throw ShapeError("ham protocol: prover state dimension mismatch");
        } else {
            Matrix m = Matrix::Identity(d, d) - w;
            Matrix b = m.adjoint() * m;
            psi = top_eig((b + b.adjoint()) / 2.0).vector;
        }
        const double acc = ham_branch_accept(w, psi);
        best = std::max(best, acc);
        sum += acc;
    }
    return max_variant ? best : sum / rep.order();
}

// ============================================================================
// Generic two- and three-message games.
// ============================================================================

struct GameShape {
    long ds_p;   // S' (verifier-kept factor after u1)
    long dr;     // factor sent to the prover after u1
    long du2;    // u2 space = S' ⊗ R'
    long dr_p;   // prover reply factor
    Matrix u2;
};

GameShape game_shape(const GateCircuit& c1, const GateCircuit& c2, int sprime) {
    if (sprime < 1 || sprime >= c1.num_wires())
        throw BadCircuit("generic game: sprime_wires must keep at least one wire "
                         "and send at least one");
    if (c2.num_wires() < sprime)
        throw BadCircuit("generic game: u2 must contain the kept wires");
    for (int w = 0; w < sprime; ++w)
        if (c1.wire_dims()[static_cast<size_t>(w)] !=
            c2.wire_dims()[static_cast<size_t>(w)])
            throw BadCircuit("generic game: u2 wire dimensions must start with the "
                             "kept wires of u1");
    if (c2.wire_dims()[0] != 2)
        throw BadCircuit("generic game: the decision wire (wire 0 of u2) must be a "
                         "qubit");
    GameShape g;
    g.ds_p = 1;
    for (int w = 0; w < sprime; ++w) g.ds_p *= c1.wire_dims()[static_cast<size_t>(w)];
    g.dr = c1.dim() / g.ds_p;
    g.du2 = c2.dim();
    g.dr_p = g.du2 / g.ds_p;
    g.u2 = compile(c2);
    return g;
}

std::vector<long> input_digits(const GateCircuit& c1, const std::vector<long>& x,
                               const char* what) {
    if (!c1.has_register("S"))
        throw BadCircuit(std::string(what) + ": u1 needs an input register \"S\"");
    const int first = c1.wire("S", 0);
    int count = 0;
    for (const Register& r : c1.registers())
        if (r.name == "S") count = static_cast<int>(r.wire_dims.size());
    if (static_cast<int>(x.size()) != count)
        throw BadParams(std::string(what) + ": input_x length does not match the "
                        "\"S\" register");
    std::vector<long> digits(static_cast<size_t>(c1.num_wires()), 0);
    for (int i = 0; i < count; ++i) digits[static_cast<size_t>(first + i)] = x[static_cast<size_t>(i)];
    return digits;
}

Vector u1_output(const GateCircuit& c1, const std::vector<long>& x, const char* what) {
    return apply(c1, c1.basis_index(input_digits(c1, x, what))).amp;
}

// Acceptance of a fixed prover isometry in the two-message game: apply
// (I_{S'} ⊗ V), then u2 ⊗ I_{E'}, and take the weight of D = |1>.
double simulate_qip2(const GameShape& g, const Vector& psi, const Matrix& viso,
                     const char* what) {
    if (viso.cols() != g.dr || viso.rows() % g.dr_p != 0 || viso.rows() < g.dr_p)
        throw ShapeError(std::string(what) + ": prover isometry must map the sent "
                         "factor into reply ⊗ environment");
    require_isometry(viso, what);
    const long de_p = viso.rows() / g.dr_p;
    Matrix out = as_matrix(psi, g.ds_p, g.dr) * viso.transpose();  // S' x (R' E')
    Matrix staged = as_matrix(as_vector(out), g.du2, de_p);        // (S' R') x E'
    Matrix decided = g.u2 * staged;
    return clamp01(decided.bottomRows(g.du2 / 2).squaredNorm());
}

Matrix accept_projector(const GameShape& g) {
    Matrix p1 = Matrix::Zero(g.du2, g.du2);
    for (long i = g.du2 / 2; i < g.du2; ++i) p1(i, i) = 1.0;
    return g.u2.adjoint() * p1 * g.u2;
}

double exact_qip2(const Protocol& p, const ProverStrategy& s) {
    if (!p.u1 || !p.u2) throw BadParams("QIP2Generic: protocol needs u1 and u2");
    const GameShape g = game_shape(*p.u1, *p.u2, p.sprime_wires);
    const Vector psi = u1_output(*p.u1, p.input_x, "QIP2Generic");

    if (s.kind == ProverStrategy::Kind::FixedIsometry)
        return simulate_qip2(g, psi, s.isometry, "QIP2Generic");
    if (s.kind != ProverStrategy::Kind::Optimized)
        throw BadParams("QIP2Generic: strategy must be FixedIsometry or Optimized");

    // Stinespring search: V: R -> R' ⊗ E' with E' sized to purify any joint
    // state on S' ⊗ R'.
    const long de_p = g.dr_p * g.ds_p;
    const Matrix pi_tot = tensor_product(accept_projector(g),
                                         Matrix::Identity(de_p, de_p));
    SeesawOptions opt;
    opt.restarts = s.restarts;
    // Flat ridges near the optimum make the polar iteration crawl; a deep
    // per-restart budget costs microseconds at game dimensions and keeps the
    // final value within the certified bracket.
    opt.max_iter = 4000;
    opt.tol = 1e-12;
    SeesawResult ss = seesaw_prover(pi_tot, psi, g.ds_p, g.dr, g.dr_p * de_p,
                                    CounterRng(s.seed), opt);
    return simulate_qip2(g, psi, ss.isometry, "QIP2Generic");
}

// First-message isometry of the three-message game: W |r> = u1 |x, 0, r>.
Matrix qip3_w(const GateCircuit& c1, const std::vector<long>& x) {
    if (!c1.has_register("R"))
        throw BadCircuit("QIP3Generic: u1 needs a prover register \"R\"");
    const Register& last = c1.registers().back();
    if (last.name != "R")
        throw BadCircuit("QIP3Generic: the prover register \"R\" must be the last "
                         "register of u1");
    long dr_pp = 1;
    for (long d : last.wire_dims) dr_pp *= d;
    const long base = c1.basis_index(input_digits(c1, x, "QIP3Generic"));
    return compile(c1).middleCols(base, dr_pp);
}

double simulate_qip3(const GameShape& g, const Matrix& w, const Vector& first,
                     const Matrix& viso) {
    const long dr_pp = w.cols();
    if (first.size() % dr_pp != 0 || first.size() < dr_pp)
        throw ShapeError("QIP3Generic: first message must live on R ⊗ E");
    const long de = first.size() / dr_pp;
    const Vector phi = as_vector(w * as_matrix(first, dr_pp, de));  // (S' R) ⊗ E
    if (viso.cols() != g.dr * de || viso.rows() % g.dr_p != 0)
        throw ShapeError("QIP3Generic: prover isometry must map R ⊗ E into "
                         "reply ⊗ environment");
    require_isometry(viso, "QIP3Generic prover");
    const long de_p = viso.rows() / g.dr_p;
    Matrix out = as_matrix(phi, g.ds_p, g.dr * de) * viso.transpose();
    Matrix staged = as_matrix(as_vector(out), g.du2, de_p);
    Matrix decided = g.u2 * staged;
    return clamp01(decided.bottomRows(g.du2 / 2).squaredNorm());
}

double exact_qip3(const Protocol& p, const ProverStrategy& s) {
    if (!p.u1 || !p.u2) throw BadParams("QIP3Generic: protocol needs u1 and u2");
    const GameShape g = game_shape(*p.u1, *p.u2, p.sprime_wires);
    const Matrix w = qip3_w(*p.u1, p.input_x);
    const long dr_pp = w.cols();

    if (s.kind == ProverStrategy::Kind::FixedIsometry) {
        if (s.states.size() != 1)
            throw BadParams("QIP3Generic: a fixed prover needs states[0] as the "
                            "first message plus the reply isometry");
        return simulate_qip3(g, w, PureState(s.states[0]).amp, s.isometry);
    }
    if (s.kind != ProverStrategy::Kind::Optimized)
        throw BadParams("QIP3Generic: strategy must be FixedIsometry (with "
                        "states[0]) or Optimized");

    // Nested alternation: private system E of dim R'' (Schmidt rank suffices),
    // inner polar updates of the reply isometry (monotone), exact top-
    // eigenvector update of the opening state.
    const long de = dr_pp;
    const long act_in = g.dr * de;
    const long de_p = act_in;
    const long act_out = g.dr_p * de_p;
    const Matrix pi_tot = tensor_product(accept_projector(g),
                                         Matrix::Identity(de_p, de_p));
    const Matrix w_ext = tensor_product(w, Matrix::Identity(de, de));
    const Matrix eye_sp = Matrix::Identity(g.ds_p, g.ds_p);

    CounterRng root(s.seed);
    double best = -1.0;
    Vector best_psi;
    Matrix best_v;
    for (int t = 0; t < std::max(1, s.restarts); ++t) {
        CounterRng rng = root.derive(static_cast<std::uint64_t>(t));
        Vector psi = haar_random_state(dr_pp * de, rng);
        Matrix viso = polar_isometry(gaussian_matrix(act_out, act_in, rng));
        double prev = -1.0, value = 0.0;
        for (int outer = 0; outer < 40; ++outer) {
            const Vector phi = as_vector(w * as_matrix(psi, dr_pp, de));
            const Matrix phi_mat = as_matrix(phi, g.ds_p, act_in);
            double vprev = -1.0;
            for (int inner = 0; inner < 30; ++inner) {
                Vector out = as_vector(phi_mat * viso.transpose());
                Vector proj = pi_tot * out;
                value = proj.dot(out).real();
                if (std::abs(value - vprev) < 1e-11) break;
                vprev = value;
                Matrix grad = as_matrix(proj, g.ds_p, act_out).transpose() *
                              phi_mat.conjugate();
                viso = polar_isometry(grad);
            }
            const Matrix lift = tensor_product(eye_sp, viso) * w_ext;
            Matrix m = lift.adjoint() * pi_tot * lift;
            TopEig e = top_eig((m + m.adjoint()) / 2.0);
            psi = e.vector;
            value = e.value;
            if (std::abs(value - prev) < 1e-9) break;
            prev = value;
        }
        if (value > best) {
            best = value;
            best_psi = psi;
            best_v = viso;
        }
    }
    return simulate_qip3(g, w, best_psi, best_v);
}

} // namespace

double run_exact(const Protocol& p, const ProverStrategy& s) {
    switch (p.kind) {
        case ProtocolKind::BoseTest: return exact_bose_test(p);
        case ProtocolKind::HSSwapTest: return exact_hs_swap(p);
        case ProtocolKind::UhlmannFid: return exact_uhlmann(p, s);
        case ProtocolKind::SepExtEB: return exact_sep_ext(p, s);
        case ProtocolKind::HamQMA: return exact_ham(p, s, true);
        case ProtocolKind::HamQAM: return exact_ham(p, s, false);
        case ProtocolKind::QIP2Generic: return exact_qip2(p, s);
        case ProtocolKind::QIP3Generic: return exact_qip3(p, s);
    }
    throw BadParams("run_exact: unknown protocol kind");
}

ShotResult run_shots(const Protocol& p, const ProverStrategy& s, long shots,
                     std::uint64_t seed) {
    if (shots < 1) throw BadParams("run_shots: shot count must be positive");
    const double prob = run_exact(p, s);
    CounterRng rng(seed);
    ShotResult r;
    r.shots = shots;
    for (long i = 0; i < shots; ++i)
        if (rng.next_double() < prob) ++r.accepted;
    r.estimate = static_cast<double>(r.accepted) / static_cast<double>(shots);
    return r;
}

ShotPlan plan_shots(double epsilon, double delta, double range_m) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw BadParams("plan_shots: epsilon must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw BadParams("plan_shots: delta must lie in (0, 1)");
    if (!(range_m > 0.0))
        throw BadParams("plan_shots: the range must be positive");
    const double n = range_m * range_m * std::log(2.0 / delta) /
                     (2.0 * epsilon * epsilon);
    ShotPlan plan;
    plan.epsilon = epsilon;
    plan.delta = delta;
    plan.range = range_m;
    plan.shots = std::max<long>(1, static_cast<long>(std::ceil(n)));
    return plan;
}

ShotPlan plan_shots_squared(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw BadParams("plan_shots_squared: epsilon must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw BadParams("plan_shots_squared: delta must lie in (0, 1)");
    const double n = std::log(2.0 / delta) / (2.0 * std::pow(epsilon, 4));
    ShotPlan plan;
    plan.epsilon = epsilon;
    plan.delta = delta;
    plan.range = 1.0;
    plan.shots = std::max<long>(1, static_cast<long>(std::ceil(n)));
    return plan;
}

double sqrt_estimator(double mean) {
    if (!(mean >= 0.0 && mean <= 1.0))
        throw BadParams("sqrt_estimator: sample mean must lie in [0, 1]");
    return std::sqrt(mean);
}

// ============================================================================
// Builders
// ============================================================================

Protocol bose_test_protocol(const GroupRep& rep, StatePrep prep) {
    if (rep.dim() != prep.dim())
        throw ShapeError("bose_test_protocol: representation dimension " +
                         std::to_string(rep.dim()) + " does not match the prepared "
                         "state dimension " + std::to_string(prep.dim()));
    Protocol p;
    p.kind = ProtocolKind::BoseTest;
    p.rep = rep;
    p.prep = std::move(prep);
    return p;
}

Protocol hs_swap_test_protocol(const GroupRep& rep, StatePrep prep) {
    if (rep.dim() != prep.dim())
        throw ShapeError("hs_swap_test_protocol: representation dimension does not "
                         "match the prepared state");
    Protocol p;
    p.kind = ProtocolKind::HSSwapTest;
    p.rep = rep;
    p.prep = std::move(prep);
    return p;
}

Protocol uhlmann_protocol(StatePrep prep, const GroupRep& rep) {
    if (rep.dim() != prep.dim())
        throw ShapeError("uhlmann_protocol: representation dimension does not match "
                         "the prepared state");
    Protocol p;
    p.kind = ProtocolKind::UhlmannFid;
    p.rep = rep;
    p.prep = std::move(prep);
    return p;
}

Protocol sep_ext_protocol(StatePrep prep, const GroupRep& rep) {
    const long ds = prep.dim();
    if (ds < 1 || rep.dim() % ds != 0)
        throw ShapeError("sep_ext_protocol: representation dimension " +
                         std::to_string(rep.dim()) + " does not factor as R ⊗ S "
                         "with dim S = " + std::to_string(ds));
    Protocol p;
    p.kind = ProtocolKind::SepExtEB;
    p.rep = rep;
    p.prep = std::move(prep);
    return p;
}

Protocol ham_qma_protocol(const Matrix& h, double t, const GroupRep& rep) {
    require_hermitian(h, "ham_qma_protocol");
    if (h.rows() != rep.dim())
        throw ShapeError("ham_qma_protocol: Hamiltonian dimension does not match "
                         "the representation");
    Protocol p;
    p.kind = ProtocolKind::HamQMA;
    p.rep = rep;
    p.hamiltonian = h;
    p.time = t;
    return p;
}

Protocol ham_qam_protocol(const Matrix& h, double t, const GroupRep& rep) {
    require_hermitian(h, "ham_qam_protocol");
    if (h.rows() != rep.dim())
        throw ShapeError("ham_qam_protocol: Hamiltonian dimension does not match "
                         "the representation");
    Protocol p;
    p.kind = ProtocolKind::HamQAM;
    p.rep = rep;
    p.hamiltonian = h;
    p.time = t;
    return p;
}

Protocol qip2_protocol(GateCircuit u1, GateCircuit u2, std::vector<long> input_x,
                       int sprime_wires) {
    game_shape(u1, u2, sprime_wires);
    input_digits(u1, input_x, "qip2_protocol");
    Protocol p;
    p.kind = ProtocolKind::QIP2Generic;
    p.u1 = std::move(u1);
    p.u2 = std::move(u2);
    p.input_x = std::move(input_x);
    p.sprime_wires = sprime_wires;
    return p;
}

Protocol qip3_protocol(GateCircuit u1, GateCircuit u2, std::vector<long> input_x,
                       int sprime_wires) {
    game_shape(u1, u2, sprime_wires);
    input_digits(u1, input_x, "qip3_protocol");
    if (!u1.has_register("R") || u1.registers().back().name != "R")
        throw BadCircuit("qip3_protocol: u1 needs a trailing prover register \"R\"");
    Protocol p;
    p.kind = ProtocolKind::QIP3Generic;
    p.u1 = std::move(u1);
    p.u2 = std::move(u2);
    p.input_x = std::move(input_x);
    p.sprime_wires = sprime_wires;
    return p;
}

} // namespace symkit
