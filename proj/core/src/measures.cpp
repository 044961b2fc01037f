#include "symkit/measures.hpp"

#include <algorithm>
#include <cmath>

#include "symkit/numerics.hpp"
#include "symkit/optimize.hpp"
#include "symkit/rng.hpp"

namespace symkit {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

Matrix symmetrized(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

void require_state_dims(const Matrix& rho, const GroupRep& rep, const char* what) {
    require_square(rho, what);
    if (rho.rows() != rep.dim())
        throw ShapeError(std::string(what) + ": state dimension " +
                         std::to_string(rho.rows()) + " does not match representation "
                         "dimension " + std::to_string(rep.dim()));
}

// Splits the representation space as R (most significant) ⊗ S where S holds
// the given state; returns dim R.
long reference_dim(const Matrix& rho_s, const GroupRep& rep, const char* what) {
    require_square(rho_s, what);
    const long ds = rho_s.rows();
    if (ds < 1 || rep.dim() % ds != 0)
        throw ShapeError(std::string(what) + ": representation dimension " +
                         std::to_string(rep.dim()) + " does not factor as R ⊗ S with "
                         "dim S = " + std::to_string(ds));
    return rep.dim() / ds;
}

// Orthonormal basis of supp(rho) as matrix columns.  Compressing onto the
// support is exact (any PSD extension of rho lives there) and restores a
// strictly feasible interior when rho is rank deficient.
Matrix support_basis(const Matrix& rho) {
    HermEig e = herm_eig(symmetrized(rho));
    const double cut = 1e-11 * std::max(1.0, e.values.maxCoeff());
    long k = 0;
    for (long i = 0; i < e.values.size(); ++i)
        if (e.values(i) > cut) ++k;
    Matrix v(rho.rows(), std::max<long>(k, 1));
    long c = 0;
    for (long i = 0; i < e.values.size(); ++i)
        if (e.values(i) > cut) v.col(c++) = e.vectors.col(i);
    if (c == 0) v.col(0) = e.vectors.col(e.values.size() - 1);
    return v;
}

struct BseSolution {
    SdpResult sdp;
    Matrix dual_y;        // Y on the full S space with Tr[Y sigma] = dual value
    bool compressed = false;
};

// Linear BSE program: maximize Tr[Pi w] over w >= 0 with Tr_R[w] = rho_s,
// solved on R ⊗ supp(rho_s).
BseSolution solve_bse_sdp(const Matrix& rho_s, const GroupRep& rep, long dim_r) {
    const long ds = rho_s.rows();
    const Matrix v = support_basis(rho_s);
    const long k = v.cols();
    const Matrix lift = tensor_product(Matrix::Identity(dim_r, dim_r), v);
    SdpProblem p;
    p.C = symmetrized(lift.adjoint() * projector(rep) * lift);
    add_partial_trace_equalities(p, dim_r * k, 0, dim_r, k, /*trace_first=*/true,
                                 symmetrized(v.adjoint() * rho_s * v));
    BseSolution out;
    // Consumers compare this value at 1e-5 or looser, so a stalled solve may
    // settle for 1e-6 accuracy instead of failing outright.
    SdpOptions opt;
    opt.tol_stall = 1e-6;
    out.sdp = sdp_solve(p, opt);
    out.compressed = k < ds;
    Matrix yc = symmetrized(partial_trace(out.sdp.dual_combo, {dim_r, k}, {1}) /
                            static_cast<double>(dim_r));
    out.dual_y = v * yc * v.adjoint();
    return out;
}

// Prover form of the BSE value: purify rho_s through R'' (dim = dim S) and
// maximize ||(Pi ⊗ I_E')(I_S ⊗ V)|psi>||^2 over isometries V: R'' -> R ⊗ E',
// with E' large enough (dim R * dim S) to purify any extension.
SeesawResult bse_seesaw(const Matrix& rho_s, const GroupRep& rep, long dim_r,
                        int restarts, std::uint64_t seed) {
    const long ds = rho_s.rows();
    const long de = dim_r * ds;         // purifying system for omega_RS
    const long act_out = dim_r * de;
    PureState psi = purify(DensityMatrix(symmetrized(rho_s)));  // R'' ⊗ S
    Vector in = permute_systems(psi.amp, {ds, ds}, {1, 0});     // S ⊗ R''
    Matrix pi_tot = permute_systems(
        tensor_product(projector(rep), Matrix::Identity(de, de)),
        {dim_r, ds, de}, {1, 0, 2});                            // S ⊗ R ⊗ E'
    SeesawOptions opt;
    opt.restarts = restarts;
    return seesaw_prover(pi_tot, in, ds, ds, act_out, CounterRng(seed), opt);
}

} // namespace

MeasureResult bose_symmetry(const Matrix& rho, const GroupRep& rep) {
    require_state_dims(rho, rep, "bose_symmetry");
    MeasureResult r;
    r.kind = "bose_symmetry";
    r.value = clamp01((projector(rep) * rho).trace().real());
    r.lower = r.upper = r.value;
    return r;
}

double hs_asymmetry_direct(const Matrix& rho, const GroupRep& rep) {
    require_state_dims(rho, rep, "hs_asymmetry");
    double acc = 0.0;
    for (int g = 0; g < rep.order(); ++g) {
        const Matrix& u = rep.element(g);
        acc += std::pow(hs_norm(u * rho - rho * u), 2);
    }
    return acc / rep.order();
}

MeasureResult hs_asymmetry(const Matrix& rho, const GroupRep& rep) {
    require_state_dims(rho, rep, "hs_asymmetry");
    const double via_twirl =
        2.0 * ((rho * rho).trace().real() - (rho * twirl(rep, rho)).trace().real());
    const double direct = hs_asymmetry_direct(rho, rep);
    MeasureResult r;
    r.kind = "hs_asymmetry";
    r.value = std::clamp(via_twirl, 0.0, gamma_bound(rep.order()));
    r.lower = std::min(via_twirl, direct);
    r.upper = std::max(via_twirl, direct);
    return r;
}

MeasureResult channel_bose_max(const QuantumChannel& ch, const GroupRep& rep) {
    if (rep.dim() != ch.out_dim())
        throw ShapeError("channel_bose_max: representation dimension " +
                         std::to_string(rep.dim()) + " does not match channel output " +
                         std::to_string(ch.out_dim()));
    TopEig e = top_eig(symmetrized(ch.adjoint_apply(projector(rep))));
    MeasureResult r;
    r.kind = "channel_bose_max";
    r.value = clamp01(e.value);
    r.lower = r.upper = r.value;
    r.opt_state = e.vector;
    return r;
}

double twirl_td(const Matrix& rho, const GroupRep& rep) {
    require_state_dims(rho, rep, "twirl_td");
    return trace_distance(rho, twirl(rep, rho));
}

MeasureResult min_td_sym(const Matrix& rho, const GroupRep& rep) {
    require_state_dims(rho, rep, "min_td_sym");
    const long d = rho.rows();
    // X = diag(P, Q, sigma):  P - Q + sigma = rho,  tr sigma = 1,
    // sigma twirl-invariant;  min tr P  <=>  max -tr P.
    SdpProblem p;
    p.C = Matrix::Zero(3 * d, 3 * d);
    p.C.block(0, 0, d, d) = -Matrix::Identity(d, d);
    add_block_equalities(p, 3 * d, {{0, 1.0}, {d, -1.0}, {2 * d, 1.0}}, d,
                         symmetrized(rho));
    add_block_trace(p, 3 * d, 2 * d, d, 1.0);
    add_map_invariance(p, 3 * d, 2 * d, d,
                       [&rep](const Matrix& e) { return twirl(rep, e); });
    SdpResult s = sdp_solve(p);
    MeasureResult r;
    r.kind = "min_td_sym";
    r.value = clamp01(-s.primal);   // attained by the feasible primal point
    r.upper = r.value;
    r.lower = clamp01(-s.dual);     // certified bound from weak duality
    r.iterations = s.iterations;
    r.converged = s.converged;
    return r;
}

double twirl_fid(const Matrix& rho, const GroupRep& rep) {
    require_state_dims(rho, rep, "twirl_fid");
    return fidelity(rho, twirl(rep, rho));
}

MeasureResult max_fid_sym(const Matrix& rho, const GroupRep& rep) {
    require_state_dims(rho, rep, "max_fid_sym");
    const long d = rho.rows();
    // Root-fidelity program: X = [[rho, L], [L†, sigma]] >= 0, maximize
    // Re tr[L]; the optimum over the twirl fixed-point set is sqrt(max F).
    // The rho block is compressed onto supp(rho) (PSD already confines L
    // there), which keeps the program strictly feasible for pure inputs.
    const Matrix v = support_basis(rho);
    const long k = v.cols();
    SdpProblem p;
    p.C = Matrix::Zero(k + d, k + d);
    p.C.block(0, k, k, d) = 0.5 * v.adjoint();
    p.C.block(k, 0, d, k) = 0.5 * v;
    add_block_equalities(p, k + d, {{0, 1.0}}, k,
                         symmetrized(v.adjoint() * rho * v));
    add_block_trace(p, k + d, k, d, 1.0);
    add_map_invariance(p, k + d, k, d,
                       [&rep](const Matrix& e) { return twirl(rep, e); });
    SdpResult s = sdp_solve(p);
    MeasureResult r;
    r.kind = "max_fid_sym";
    const double root = std::max(0.0, s.primal);
    r.value = clamp01(root * root);
    r.lower = r.value;
    r.upper = clamp01(std::max(0.0, s.dual) * std::max(0.0, s.dual));
    r.iterations = s.iterations;
    r.converged = s.converged;
    return r;
}

MeasureResult bse_fidelity(const Matrix& rho_s, const GroupRep& rep,
                           int seesaw_restarts, std::uint64_t seed) {
    const long dim_r = reference_dim(rho_s, rep, "bse_fidelity");
    BseSolution s = solve_bse_sdp(rho_s, rep, dim_r);
    SeesawResult ss = bse_seesaw(rho_s, rep, dim_r, seesaw_restarts, seed);
    MeasureResult r;
    r.kind = "bse_fidelity";
    r.value = clamp01(s.sdp.primal);
    r.upper = clamp01(s.sdp.dual);
    r.lower = clamp01(ss.value);
    r.iterations = s.sdp.iterations + ss.iterations;
    r.converged = s.sdp.converged && ss.converged;
    return r;
}

SepExtWitness sep_ext_witness(const Matrix& rho_s, const GroupRep& rep,
                              int restarts, std::uint64_t seed) {
    const long dim_r = reference_dim(rho_s, rep, "sep_ext_bose");
    const long ds = rho_s.rows();
    const Matrix pi = projector(rep);
    const Matrix eye_s = Matrix::Identity(ds, ds);
    const Matrix eye_r = Matrix::Identity(dim_r, dim_r);

    // Canonical purification through R'' (dim = dim S); a POVM on R'' plus a
    // pure-state family on R parametrizes every separable extension.
    PureState pure = purify(DensityMatrix(symmetrized(rho_s)));
    const Matrix psi = pure.amp * pure.amp.adjoint();   // on R'' ⊗ S
    const int outcomes = static_cast<int>(ds * ds);

    CounterRng root(seed);
    SepExtWitness w;
    w.value = -1.0;

    for (int t = 0; t < restarts; ++t) {
        CounterRng rng = root.derive(static_cast<std::uint64_t>(t));
        std::vector<Matrix> phi(static_cast<size_t>(outcomes));
        for (auto& f : phi) {
            Vector v = haar_random_state(dim_r, rng);
            f = v * v.adjoint();
        }
        std::vector<Matrix> mus(static_cast<size_t>(outcomes),
                                eye_s / static_cast<double>(outcomes));
        double prev = -1.0, value = 0.0;
        bool converged = false;
        for (int sweep = 0; sweep < 150; ++sweep) {
            ++w.iterations;
            // POVM step (exact): maximize sum_x tr[mu_x N_x] over POVMs.
            SdpProblem p;
            p.C = Matrix::Zero(outcomes * ds, outcomes * ds);
            std::vector<std::pair<long, double>> blocks;
            for (int x = 0; x < outcomes; ++x) {
                Matrix l = symmetrized(
                    partial_trace(pi * tensor_product(phi[static_cast<size_t>(x)], eye_s),
                                  {dim_r, ds}, {1}));
                Matrix n = symmetrized(
                    partial_trace(tensor_product(eye_s, l) * psi, {ds, ds}, {0}));
                p.C.block(x * ds, x * ds, ds, ds) = n;
                blocks.emplace_back(x * ds, 1.0);
            }
            add_block_equalities(p, outcomes * ds, blocks, ds, eye_s);
            SdpOptions popt;
            popt.tol_stall = 1e-6;  // seesaw step; downstream tolerance 1e-5
            SdpResult povm = sdp_solve(p, popt);

            // Interior-point blocks are strictly PSD, but a stall-accepted
            // solve can leave their sum off identity by the accepted residual;
            // sandwiching by total^{-1/2} restores an exact POVM inside the
            // cone.
            for (int x = 0; x < outcomes; ++x)
                mus[static_cast<size_t>(x)] =
                    symmetrized(povm.X.block(x * ds, x * ds, ds, ds));
            Matrix total = Matrix::Zero(ds, ds);
            for (const Matrix& mu : mus) total += mu;
            const HermEig te = herm_eig(total);
            const Matrix tinv_half =
                te.vectors *
                te.values.cwiseMax(1e-12).cwiseInverse().cwiseSqrt().asDiagonal() *
                te.vectors.adjoint();
            for (Matrix& mu : mus) mu = symmetrized(tinv_half * mu * tinv_half);

            // State step (exact): top eigenvector of the conditional operator.
            value = 0.0;
            for (int x = 0; x < outcomes; ++x) {
                const Matrix& mu = mus[static_cast<size_t>(x)];
                Matrix tau = symmetrized(
                    partial_trace(tensor_product(mu, eye_s) * psi, {ds, ds}, {1}));
                if (tau.trace().real() > 1e-13) {
                    Matrix k = symmetrized(
                        partial_trace(pi * tensor_product(eye_r, tau), {dim_r, ds}, {0}));
                    TopEig e = top_eig(k);
                    phi[static_cast<size_t>(x)] = e.vector * e.vector.adjoint();
                }
                value += (pi * tensor_product(phi[static_cast<size_t>(x)], tau))
                             .trace()
                             .real();
            }
            if (std::abs(value - prev) < 1e-10) {
                converged = true;
                break;
            }
            prev = value;
        }
        if (value > w.value) {
            w.value = value;
            w.converged = converged;
            w.povm = mus;
            w.states = phi;
        }
    }
    return w;
}

MeasureResult sep_ext_bose(const Matrix& rho_s, const GroupRep& rep,
                           int restarts, std::uint64_t seed) {
    const long dim_r = reference_dim(rho_s, rep, "sep_ext_bose");
    // Certified upper bound: the unconstrained-extension value.
    BseSolution bse = solve_bse_sdp(rho_s, rep, dim_r);
    SepExtWitness w = sep_ext_witness(rho_s, rep, restarts, seed);
    MeasureResult r;
    r.kind = "sep_ext_bose";
    r.value = clamp01(w.value);
    r.iterations = w.iterations;
    r.converged = w.converged;
    r.lower = r.value;
    r.upper = clamp01(bse.sdp.dual);
    return r;
}

MeasureResult channel_bse(const QuantumChannel& ch, const GroupRep& rep,
                          int restarts, std::uint64_t seed) {
    const long ds = ch.out_dim();
    if (ds < 1 || rep.dim() % ds != 0)
        throw ShapeError("channel_bse: representation dimension " +
                         std::to_string(rep.dim()) + " does not factor as R ⊗ S with "
                         "dim S = " + std::to_string(ds));
    const long dim_r = rep.dim() / ds;

    CounterRng root(seed);
    MeasureResult r;
    r.kind = "channel_bse";
    r.value = 0.0;
    r.upper = 1.0;
    r.converged = false;

    for (int t = 0; t < restarts; ++t) {
        CounterRng rng = root.derive(static_cast<std::uint64_t>(t));
        Vector v0 = haar_random_state(ch.in_dim(), rng);
        Matrix rho = v0 * v0.adjoint();
        double prev = -1.0, run_best = 0.0;
        bool converged = false;
        for (int it = 0; it < 200; ++it) {
            ++r.iterations;
            // Inner program at this output.  The dual combination is I_R ⊗ Y
            // with Y feasible for a constraint set that does not depend on
            // sigma, so lambda_max(N†(Y)) bounds every input globally — but
            // only a full-space Y carries slope off supp(sigma), so rank
            // deficient outputs get a second, mollified solve for the dual.
            Matrix sigma = symmetrized(ch.apply(rho));
            BseSolution s = solve_bse_sdp(sigma, rep, dim_r);
            const double value = s.sdp.primal;
            r.trace.push_back(value);
            run_best = std::max(run_best, value);
            Matrix y = s.dual_y;
            bool have_full_dual = !s.compressed;
            if (s.compressed) {
                const double delta = 1e-7;
                Matrix soft = (1.0 - delta) * sigma +
                              delta / static_cast<double>(ds) *
                                  Matrix::Identity(ds, ds);
                try {
                    BseSolution s2 = solve_bse_sdp(soft, rep, dim_r);
                    if (!s2.compressed) {
                        y = s2.dual_y;
                        have_full_dual = true;
                    }
                } catch (const SolverFail&) {
                    // keep the compressed dual; certificate update skipped
                }
            }
            Matrix eff = symmetrized(ch.adjoint_apply(y));
            TopEig e = top_eig(eff);
            if (have_full_dual)
                r.upper = std::min(r.upper, std::max(0.0, e.value));
            if (std::abs(value - prev) < 1e-8) {
                converged = true;
                break;
            }
            prev = value;
            rho = e.vector * e.vector.adjoint();
        }
        if (run_best > r.value) {
            r.value = clamp01(run_best);
            r.converged = converged;
        }
    }
    r.lower = r.value;
    r.upper = std::max(r.upper, r.value);
    return r;
}

namespace {

MeasureResult ham_spec_impl(const Matrix& h, double t, const GroupRep& rep,
                            bool max_variant) {
    require_hermitian(h, max_variant ? "ham_max_spec" : "ham_avg_spec");
    if (h.rows() != rep.dim())
        throw ShapeError("ham spec measure: Hamiltonian dimension does not match "
                         "representation");
    const Matrix evo = expm_hermitian(h, t);
    MeasureResult r;
    r.kind = max_variant ? "ham_max_spec" : "ham_avg_spec";
    double best = -1.0, sum = 0.0;
    for (int g = 0; g < rep.order(); ++g) {
        const Matrix& u = rep.element(g);
        const double s = std::pow(spectral_norm(u * evo - evo * u), 2);
        sum += s;
        if (s > best + 1e-15) {  // strict improvement: ties keep the smallest g
            best = s;
            r.argmax_g = g;
        }
    }
    r.value = std::clamp(max_variant ? best : sum / rep.order(), 0.0, 4.0);
    if (!max_variant) r.argmax_g = -1;
    r.lower = r.upper = r.value;
    return r;
}

} // namespace

MeasureResult ham_max_spec(const Matrix& h, double t, const GroupRep& rep) {
    return ham_spec_impl(h, t, rep, true);
}

MeasureResult ham_avg_spec(const Matrix& h, double t, const GroupRep& rep) {
    return ham_spec_impl(h, t, rep, false);
}

} // namespace symkit
