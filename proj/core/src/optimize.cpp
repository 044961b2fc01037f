#include "symkit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "symkit/numerics.hpp"

namespace symkit {

namespace {

// ----------------------------------------------------------------------------
// Real vectorization of Hermitian matrices: an isometry between the d^2-dim
// real vector space of Hermitian d x d matrices with <A,B> = Re tr[AB] and
// R^{d^2} with the dot product.  Used for constraint pruning.
// ----------------------------------------------------------------------------

RealVector herm_vec(const Matrix& a) {
    const long d = a.rows();
    RealVector v(d * d);
    long k = 0;
    const double s = std::sqrt(2.0);
    for (long i = 0; i < d; ++i) v(k++) = a(i, i).real();
    for (long i = 0; i < d; ++i)
        for (long j = i + 1; j < d; ++j) {
            v(k++) = s * a(i, j).real();
            v(k++) = s * a(i, j).imag();
        }
    return v;
}

Matrix herm_unvec(const RealVector& v, long d) {
    Matrix a = Matrix::Zero(d, d);
    long k = 0;
    const double s = 1.0 / std::sqrt(2.0);
    for (long i = 0; i < d; ++i) a(i, i) = v(k++);
    for (long i = 0; i < d; ++i)
        for (long j = i + 1; j < d; ++j) {
            double re = v(k++) * s;
            double im = v(k++) * s;
            a(i, j) = Complex(re, im);
            a(j, i) = Complex(re, -im);
        }
    return a;
}

double herm_inner(const Matrix& a, const Matrix& b) {
    return (a * b).trace().real();
}

// Largest alpha in (0, 1] with m + alpha * dm >= 0, damped by 0.98.
double psd_step(const Matrix& m, const Matrix& dm) {
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) return 0.0;
    Matrix l = llt.matrixL();
    Matrix w = l.triangularView<Eigen::Lower>().solve(dm);
    w = l.triangularView<Eigen::Lower>().solve(w.adjoint()).adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es((w + w.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    double lmin = es.eigenvalues().minCoeff();
    if (lmin >= 0.0) return 1.0;
    return std::min(1.0, 0.98 / (-lmin));
}

struct PrunedSystem {
    std::vector<Matrix> A;
    RealVector b;
};

// Gram-Schmidt over the vectorized constraints.  Dependent-but-consistent
// rows are dropped; dependent rows with mismatched right-hand sides raise
// Infeasible (the projection coefficients are the certificate).
PrunedSystem prune_constraints(const std::vector<Matrix>& a_in, const RealVector& b_in,
                               long d) {
    PrunedSystem out;
    std::vector<RealVector> basis;
    std::vector<double> rhs;
    const double scale_b = std::max(1.0, b_in.size() ? b_in.cwiseAbs().maxCoeff() : 0.0);
    for (size_t i = 0; i < a_in.size(); ++i) {
        RealVector v = herm_vec(a_in[i]);
        double b = b_in(static_cast<long>(i));
        const double norm0 = std::max(1.0, v.norm());
        for (size_t k = 0; k < basis.size(); ++k) {
            double c = v.dot(basis[k]);
            v -= c * basis[k];
            b -= c * rhs[k];
        }
        // Second pass for numerical hygiene on near-dependent rows.
        for (size_t k = 0; k < basis.size(); ++k) {
            double c = v.dot(basis[k]);
            v -= c * basis[k];
            b -= c * rhs[k];
        }
        double rnorm = v.norm();
        if (rnorm <= 1e-12 * norm0) {
            if (std::abs(b) > 1e-9 * scale_b)
                throw Infeasible(
                    "sdp_solve: constraint " + std::to_string(i) +
                    " is a linear combination of earlier rows but its right-hand side "
                    "disagrees by " + std::to_string(std::abs(b)));
            continue;  // redundant row
        }
        v /= rnorm;
        b /= rnorm;
        basis.push_back(v);
        rhs.push_back(b);
    }
    out.A.reserve(basis.size());
    out.b.resize(static_cast<long>(basis.size()));
    for (size_t k = 0; k < basis.size(); ++k) {
        out.A.push_back(herm_unvec(basis[k], d));
        out.b(static_cast<long>(k)) = rhs[k];
    }
    return out;
}

} // namespace

SdpResult sdp_solve(const SdpProblem& p, const SdpOptions& opt) {
    require_square(p.C, "sdp_solve");
    const long d = p.C.rows();
    if (d > cap::sdp_dim)
        throw DimensionCap("sdp_solve: block dimension " + std::to_string(d) +
                           " exceeds SDP cap " + std::to_string(cap::sdp_dim));
    require_hermitian(p.C, "sdp_solve objective");
    if (static_cast<long>(p.A.size()) != p.b.size())
        throw ShapeError("sdp_solve: constraint/rhs count mismatch");
    for (size_t i = 0; i < p.A.size(); ++i) {
        require_square(p.A[i], "sdp_solve constraint");
        if (p.A[i].rows() != d) throw ShapeError("sdp_solve: constraint dimension mismatch");
        require_hermitian(p.A[i], "sdp_solve constraint");
    }

    // Internally always maximize; flip the objective for minimization.
    const double sign = p.maximize ? 1.0 : -1.0;
    Matrix C = sign * p.C;

    PrunedSystem sys = prune_constraints(p.A, p.b, d);
    const int m = static_cast<int>(sys.A.size());

    // Degenerate case: no constraints.  The maximum of <C,X> over X >= 0 is
    // unbounded unless C <= 0; we only need the bounded case X = 0 plus a
    // guard, but in practice every caller constrains the trace.  Handle it
    // conservatively.
    if (m == 0) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(C, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().maxCoeff() > 1e-12)
            throw Infeasible("sdp_solve: unboundedness detected (no constraints and the "
                             "objective has a positive direction)");
        SdpResult r;
        r.X = Matrix::Zero(d, d);
        r.y = RealVector::Zero(0);
        r.dual_combo = Matrix::Zero(d, d);
        r.primal = r.dual = 0.0;
        r.gap = 0.0;
        r.iterations = 0;
        r.converged = true;
        return r;
    }

    const double bscale = std::max(1.0, sys.b.cwiseAbs().maxCoeff());
    const double cscale = std::max(1.0, C.cwiseAbs().maxCoeff());

    Matrix X = Matrix::Identity(d, d) * bscale;
    Matrix S = Matrix::Identity(d, d) * cscale;
    RealVector y = RealVector::Zero(m);

    const Matrix I = Matrix::Identity(d, d);
    SdpResult res;
    res.converged = false;
    int it = 0;

    // Best iterate seen so far, by worst relative residual.  Degenerate
    // instances hit a roundoff floor where the gap keeps shrinking while the
    // primal residual creeps up; once nothing improves for stall_window
    // iterations we stop and fall back to this iterate.
    double best_merit = std::numeric_limits<double>::infinity();
    Matrix best_X = X;
    RealVector best_y = y;
    int best_it = 0;

    for (; it < opt.max_iter; ++it) {
        // Residuals.
        RealVector rp(m);
        for (int i = 0; i < m; ++i) rp(i) = sys.b(i) - herm_inner(sys.A[i], X);
        Matrix Rd = C + S;  // C + S - sum y A
        for (int i = 0; i < m; ++i) Rd -= y(i) * sys.A[i];

        const double mu = herm_inner(X, S) / static_cast<double>(d);
        const double primal_obj = herm_inner(C, X);
        const double dual_obj = sys.b.dot(y);
        const double rel_gap =
            std::abs(dual_obj - primal_obj) / std::max(1.0, std::abs(primal_obj));
        const bool feas_p = rp.cwiseAbs().maxCoeff() <= opt.tol_feas * bscale;
        const bool feas_d = Rd.cwiseAbs().maxCoeff() <= opt.tol_feas * cscale;
        const double obj_scale = std::max(1.0, std::abs(primal_obj));
        if (feas_p && feas_d && rel_gap <= opt.tol_gap && mu <= opt.tol_gap * obj_scale) {
            res.converged = true;
            break;
        }
        const double merit =
            std::max({rp.cwiseAbs().maxCoeff() / bscale, Rd.cwiseAbs().maxCoeff() / cscale,
                      rel_gap, mu / obj_scale});
        if (merit < best_merit) {
            best_merit = merit;
            best_X = X;
            best_y = y;
            best_it = it;
        }
        if (it - best_it >= opt.stall_window) break;  // no progress; stop grinding
        static const bool trace = std::getenv("SYMKIT_SDP_TRACE") != nullptr;
        if (trace && (it < 30 || it % 200 == 0))
            std::fprintf(stderr,
                         "it=%d mu=%.3e rp=%.3e rd=%.3e gap=%.3e pobj=%.9f dobj=%.9f\n", it,
                         mu, rp.cwiseAbs().maxCoeff(), Rd.cwiseAbs().maxCoeff(), rel_gap,
                         primal_obj, dual_obj);
        if (y.cwiseAbs().maxCoeff() > 1e13 || mu > 1e16)
            throw Infeasible("sdp_solve: iterates diverged; the problem is primal or dual "
                             "infeasible");

        // Shared per-iteration factors.
        Eigen::LLT<Matrix> slt(S);
        if (slt.info() != Eigen::Success) break;  // boundary roundoff; best iterate decides
        Matrix Sinv = slt.solve(I);
        Sinv = (Sinv + Sinv.adjoint()) / 2.0;

        std::vector<Matrix> XASinv(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j) XASinv[static_cast<size_t>(j)] = X * sys.A[j] * Sinv;
        RealMatrix M(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                M(i, j) = herm_inner(sys.A[i], XASinv[static_cast<size_t>(j)]);
        M = ((M + M.transpose()) / 2.0).eval();
        // Tiny ridge for safety on nearly degenerate systems.
        M.diagonal().array() += 1e-13 * std::max(1.0, M.trace());
        Eigen::LDLT<RealMatrix> mldlt(M);
        if (mldlt.info() != Eigen::Success) break;  // singular normal system; stop here

        Matrix XRdSinv = X * Rd * Sinv;
        auto solve_direction = [&](double tau, Matrix& dX, Matrix& dS, RealVector& dy) {
            RealVector rhs(m);
            for (int i = 0; i < m; ++i)
                rhs(i) = tau * herm_inner(sys.A[i], Sinv) + herm_inner(sys.A[i], XRdSinv) -
                         sys.b(i);
            dy = mldlt.solve(rhs);
            dS = -Rd;
            for (int i = 0; i < m; ++i) dS += dy(i) * sys.A[i];
            dX = tau * Sinv - X - X * dS * Sinv;
            dX = ((dX + dX.adjoint()) / 2.0).eval();
        };

        // Predictor (affine direction) fixes the centering parameter.
        Matrix dXa, dSa;
        RealVector dya;
        solve_direction(0.0, dXa, dSa, dya);
        double ap = psd_step(X, dXa);
        double ad = psd_step(S, dSa);
        double mu_aff =
            herm_inner(X + ap * dXa, S + ad * dSa) / static_cast<double>(d);
        double sigma = std::pow(std::max(mu_aff, 0.0) / std::max(mu, 1e-300), 3.0);
        sigma = std::clamp(sigma, 1e-10, 1.0);

        // Corrector.
        Matrix dX, dS;
        RealVector dy;
        solve_direction(sigma * mu, dX, dS, dy);
        ap = psd_step(X, dX);
        ad = psd_step(S, dS);
        if (trace && (it < 30 || it % 200 == 0))
            std::fprintf(stderr, "    sigma=%.3e ap=%.3e ad=%.3e dymax=%.3e\n", sigma, ap,
                         ad, dy.size() ? dy.cwiseAbs().maxCoeff() : 0.0);
        if (ap <= 1e-12 && ad <= 1e-12) break;  // cone boundary; best iterate decides
        X = ((X + ap * dX + (X + ap * dX).adjoint()) / 2.0).eval();
        S = ((S + ad * dS + (S + ad * dS).adjoint()) / 2.0).eval();
        y += ad * dy;
    }

    if (!res.converged) {
        X = best_X;
        y = best_y;
        if (best_merit <= opt.tol_stall) {
            res.converged = true;
        } else if (opt.throw_on_fail) {
            char mb[48];
            std::snprintf(mb, sizeof mb, "%.3e", best_merit);
            throw SolverFail("sdp_solve: stalled after " + std::to_string(it) +
                             " iterations with worst relative residual " + mb);
        }
    }

    const double primal_obj = herm_inner(C, X);
    const double dual_obj = sys.b.dot(y);
    res.X = X;
    res.y = y;
    res.dual_combo = Matrix::Zero(d, d);
    for (int i = 0; i < m; ++i) res.dual_combo += y(i) * sys.A[i];
    res.primal = sign * primal_obj;
    res.dual = sign * dual_obj;
    res.gap = std::abs(res.dual - res.primal);
    res.iterations = it;
    return res;
}

// ============================================================================
// Constraint builders
// ============================================================================

namespace {

Matrix embed_at(const Matrix& e, long big_dim, long offset) {
    Matrix a = Matrix::Zero(big_dim, big_dim);
    a.block(offset, offset, e.rows(), e.cols()) = e;
    return a;
}

// Visit the orthonormal Hermitian basis of a dim x dim space.
template <typename F>
void for_each_herm_basis(long dim, F&& f) {
    const double s = 1.0 / std::sqrt(2.0);
    for (long i = 0; i < dim; ++i) {
        Matrix e = Matrix::Zero(dim, dim);
        e(i, i) = 1.0;
        f(e);
    }
    for (long i = 0; i < dim; ++i)
        for (long j = i + 1; j < dim; ++j) {
            Matrix e = Matrix::Zero(dim, dim);
            e(i, j) = s;
            e(j, i) = s;
            f(e);
            e(i, j) = Complex(0, s);
            e(j, i) = Complex(0, -s);
            f(e);
        }
}

} // namespace

void add_block_equalities(SdpProblem& p, long big_dim,
                          const std::vector<std::pair<long, double>>& blocks,
                          long dim, const Matrix& rhs) {
    require_hermitian(rhs, "add_block_equalities rhs");
    if (rhs.rows() != dim) throw ShapeError("add_block_equalities: rhs dimension mismatch");
    for_each_herm_basis(dim, [&](const Matrix& e) {
        Matrix a = Matrix::Zero(big_dim, big_dim);
        for (const auto& [offset, coef] : blocks) {
            if (offset < 0 || offset + dim > big_dim)
                throw ShapeError("add_block_equalities: block outside variable");
            a += coef * embed_at(e, big_dim, offset);
        }
        p.A.push_back(std::move(a));
        RealVector b2(p.b.size() + 1);
        b2.head(p.b.size()) = p.b;
        b2(p.b.size()) = (e * rhs).trace().real();
        p.b = std::move(b2);
    });
}

void add_map_invariance(SdpProblem& p, long big_dim, long offset, long dim,
                        const std::function<Matrix(const Matrix&)>& map) {
    // The raw directions e - map(e) over a Hermitian basis are heavily
    // linearly dependent (for an involution twirl, e and its conjugate give
    // opposite copies of the same direction), which makes the interior-point
    // normal system singular.  Orthonormalize in the Hilbert-Schmidt inner
    // product and keep only independent directions.
    std::vector<Matrix> kept;
    for_each_herm_basis(dim, [&](const Matrix& e) {
        Matrix diff = e - map(e);
        diff = (diff + diff.adjoint()) / 2.0;
        if (diff.cwiseAbs().maxCoeff() <= 1e-14) return;  // invariant direction
        for (const Matrix& b : kept)
            diff -= (b * diff).trace().real() * b;
        const double n = std::sqrt(std::max(0.0, (diff * diff).trace().real()));
        if (n <= 1e-9) return;  // dependent on earlier directions
        diff /= n;
        kept.push_back(diff);
        p.A.push_back(embed_at(diff, big_dim, offset));
        RealVector b2(p.b.size() + 1);
        b2.head(p.b.size()) = p.b;
        b2(p.b.size()) = 0.0;
        p.b = std::move(b2);
    });
}

void add_block_trace(SdpProblem& p, long big_dim, long offset, long dim, double value) {
    p.A.push_back(embed_at(Matrix::Identity(dim, dim), big_dim, offset));
    RealVector b2(p.b.size() + 1);
    b2.head(p.b.size()) = p.b;
    b2(p.b.size()) = value;
    p.b = std::move(b2);
}

void add_partial_trace_equalities(SdpProblem& p, long big_dim, long offset,
                                  long dim_a, long dim_b, bool trace_first,
                                  const Matrix& rhs) {
    const long kept = trace_first ? dim_b : dim_a;
    require_hermitian(rhs, "add_partial_trace_equalities rhs");
    if (rhs.rows() != kept)
        throw ShapeError("add_partial_trace_equalities: rhs dimension mismatch");
    for_each_herm_basis(kept, [&](const Matrix& e) {
        Matrix lifted = trace_first
                            ? tensor_product(Matrix::Identity(dim_a, dim_a), e)
                            : tensor_product(e, Matrix::Identity(dim_b, dim_b));
        p.A.push_back(embed_at(lifted, big_dim, offset));
        RealVector b2(p.b.size() + 1);
        b2.head(p.b.size()) = p.b;
        b2(p.b.size()) = (e * rhs).trace().real();
        p.b = std::move(b2);
    });
}

// ============================================================================
// See-saw over isometries
// ============================================================================

Matrix polar_isometry(const Matrix& g) {
    if (g.rows() < g.cols())
        throw ShapeError("polar_isometry: need rows >= cols for an isometry");
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

SeesawResult seesaw_prover(const Matrix& pi, const Vector& in, long dim_spec,
                             long act_in, long act_out, CounterRng rng,
                             const SeesawOptions& opt) {
    if (act_out < act_in)
        throw ShapeError("seesaw_prover: act_out must be >= act_in");
    if (in.size() != dim_spec * act_in)
        throw ShapeError("seesaw_prover: input vector dimension mismatch");
    if (pi.rows() != dim_spec * act_out)
        throw ShapeError("seesaw_prover: projector dimension mismatch");
    require_hermitian(pi, "seesaw_prover projector");

    const Matrix in_mat = as_matrix(in, dim_spec, act_in);

    SeesawResult best;
    best.value = -1.0;
    best.iterations = 0;
    best.converged = false;

    for (int r = 0; r < opt.restarts; ++r) {
        CounterRng sub = rng.derive(static_cast<std::uint64_t>(r));
        // Random starting isometry (thin QR of a Gaussian matrix).
        Matrix g(act_out, act_in);
        for (long i = 0; i < act_out; ++i)
            for (long j = 0; j < act_in; ++j)
                g(i, j) = Complex(sub.next_gaussian(), sub.next_gaussian());
        Matrix v = polar_isometry(g);

        double value = -1.0;
        bool converged = false;
        int used = 0;
        for (int itn = 0; itn < opt.max_iter; ++itn) {
            ++used;
            Matrix out_mat = in_mat * v.transpose();          // spec x act_out
            Vector w = pi * as_vector(out_mat);
            double now = std::real(as_vector(out_mat).dot(w));
            if (now + 1e-9 < value)
                throw SolverFail("seesaw_prover: objective decreased, which the polar "
                                 "update rules out");
            // Gradient pairing G(a_out, a_in) = sum_s w[s,a_out] conj(in[s,a_in]).
            Matrix wm = as_matrix(w, dim_spec, act_out);
            Matrix grad = wm.transpose() * in_mat.conjugate();
            if (now - value <= opt.tol && itn > 0) {
                value = std::max(value, now);
                converged = true;
                break;
            }
            value = now;
            v = polar_isometry(grad);
        }
        best.iterations += used;
        if (value > best.value) {
            best.value = value;
            best.isometry = v;
            best.converged = converged;
        }
    }
    best.value = std::clamp(best.value, 0.0, 1.0);
    return best;
}

// ============================================================================
// Random ensembles
// ============================================================================

Matrix haar_random_unitary(long dim, CounterRng& rng) {
    require_dense_cap(dim, "haar_random_unitary");
    Matrix g(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j)
            g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    Vector phases(dim);
    for (long i = 0; i < dim; ++i) {
        Complex rii = r(i, i);
        phases(i) = std::abs(rii) > 0 ? rii / std::abs(rii) : Complex(1, 0);
    }
    return q * phases.asDiagonal();
}

Vector haar_random_state(long dim, CounterRng& rng) {
    require_dense_cap(dim, "haar_random_state");
    Vector v(dim);
    for (long i = 0; i < dim; ++i) v(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
    return v / v.norm();
}

Matrix random_density(long dim, CounterRng& rng, long rank) {
    if (rank <= 0) rank = dim;
    Vector psi = haar_random_state(dim * rank, rng);
    return partial_trace(psi * psi.adjoint(), {dim, rank}, {0});
}

} // namespace symkit
