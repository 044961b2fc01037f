#include "symkit/channels.hpp"

#include <cmath>

#include "symkit/numerics.hpp"

namespace symkit {

QuantumChannel::QuantumChannel(Matrix dilation, long in_dim, long env_in_dim, long out_dim)
    : dilation_(std::move(dilation)),
      in_dim_(in_dim),
      env_in_dim_(env_in_dim),
      out_dim_(out_dim) {
    if (in_dim_ < 1 || env_in_dim_ < 1 || out_dim_ < 1)
        throw BadDilation("QuantumChannel: dimensions must be positive");
    const long total = in_dim_ * env_in_dim_;
    if (total % out_dim_ != 0)
        throw BadDilation("QuantumChannel: out_dim " + std::to_string(out_dim_) +
                          " does not divide dilation dimension " + std::to_string(total));
    env_out_dim_ = total / out_dim_;
    if (dilation_.rows() != total || dilation_.cols() != total)
        throw BadDilation("QuantumChannel: dilation matrix is " +
                          std::to_string(dilation_.rows()) + "x" +
                          std::to_string(dilation_.cols()) + ", expected " +
                          std::to_string(total));
    require_dense_cap(total, "QuantumChannel");
    require_unitary(dilation_, "QuantumChannel dilation");
}

const std::vector<Matrix>& QuantumChannel::kraus() const {
    if (!kraus_) {
        std::vector<Matrix> ks;
        ks.reserve(static_cast<size_t>(env_out_dim_));
        for (long e = 0; e < env_out_dim_; ++e) {
            Matrix k(out_dim_, in_dim_);
            for (long o = 0; o < out_dim_; ++o)
                for (long i = 0; i < in_dim_; ++i)
                    k(o, i) = dilation_(o * env_out_dim_ + e, i * env_in_dim_);
            ks.push_back(std::move(k));
        }
        kraus_ = std::move(ks);
    }
    return *kraus_;
}

Matrix QuantumChannel::apply(const Matrix& rho) const {
    if (rho.rows() != in_dim_ || rho.cols() != in_dim_)
        throw ShapeError("QuantumChannel::apply: input must be " + std::to_string(in_dim_) +
                         "-dimensional");
    Matrix out = Matrix::Zero(out_dim_, out_dim_);
    for (const Matrix& k : kraus()) out += k * rho * k.adjoint();
    return out;
}

Matrix QuantumChannel::adjoint_apply(const Matrix& m) const {
    if (m.rows() != out_dim_ || m.cols() != out_dim_)
        throw ShapeError("QuantumChannel::adjoint_apply: operand must be " +
                         std::to_string(out_dim_) + "-dimensional");
    Matrix out = Matrix::Zero(in_dim_, in_dim_);
    for (const Matrix& k : kraus()) out += k.adjoint() * m * k;
    return out;
}

const Matrix& QuantumChannel::choi() const {
    if (!choi_) {
        // J = sum_e |k_e><k_e| with |k_e> = sum_i |i> ⊗ K_e|i>.
        Matrix j = Matrix::Zero(in_dim_ * out_dim_, in_dim_ * out_dim_);
        for (const Matrix& k : kraus()) {
            Vector v(in_dim_ * out_dim_);
            for (long i = 0; i < in_dim_; ++i) v.segment(i * out_dim_, out_dim_) = k.col(i);
            j += v * v.adjoint();
        }
        choi_ = std::move(j);
    }
    return *choi_;
}

// ============================================================================
// EBChannel
// ============================================================================

EBChannel::EBChannel(std::vector<Matrix> povm, std::vector<Matrix> states)
    : povm_(std::move(povm)), states_(std::move(states)) {
    if (povm_.empty() || povm_.size() != states_.size())
        throw BadPOVM("EBChannel: POVM and state lists must be nonempty, equal length");
    const long din = povm_[0].rows();
    const long dout = states_[0].rows();
    Matrix total = Matrix::Zero(din, din);
    for (size_t x = 0; x < povm_.size(); ++x) {
        if (povm_[x].rows() != din || povm_[x].cols() != din)
            throw BadPOVM("EBChannel: POVM element dimensions differ");
        if (!is_psd(povm_[x]))
            throw BadPOVM("EBChannel: POVM element " + std::to_string(x) + " is not PSD");
        total += povm_[x];
        if (states_[x].rows() != dout || states_[x].cols() != dout)
            throw BadPOVM("EBChannel: output state dimensions differ");
        DensityMatrix check(states_[x]);  // validates state-ness
        (void)check;
    }
    if ((total - Matrix::Identity(din, din)).cwiseAbs().maxCoeff() >
        1e-9 * static_cast<double>(din))
        throw BadPOVM("EBChannel: POVM elements do not sum to identity");
}

Matrix EBChannel::apply(const Matrix& rho) const {
    if (rho.rows() != in_dim() || rho.cols() != in_dim())
        throw ShapeError("EBChannel::apply: input dimension mismatch");
    Matrix out = Matrix::Zero(out_dim(), out_dim());
    for (size_t x = 0; x < povm_.size(); ++x)
        out += (povm_[x] * rho).trace() * states_[x];
    return out;
}

Matrix EBChannel::extend(const Matrix& omega, long dim_spec) const {
    const long din = in_dim();
    if (omega.rows() != din * dim_spec || omega.cols() != din * dim_spec)
        throw ShapeError("EBChannel::extend: operand must live on in ⊗ spec");
    Matrix out = Matrix::Zero(out_dim() * dim_spec, out_dim() * dim_spec);
    for (size_t x = 0; x < povm_.size(); ++x) {
        // Tr_in[(mu_x ⊗ I) omega] on the spectator factor.
        Matrix partial = partial_trace(
            tensor_product(povm_[x], Matrix::Identity(dim_spec, dim_spec)) * omega,
            {din, dim_spec}, {1});
        if (partial.cwiseAbs().maxCoeff() < 1e-14) continue;  // dead outcome
        out += tensor_product(states_[x], partial);
    }
    return out;
}

QuantumChannel EBChannel::dilate() const {
    // V|i>_in = sum_x |x>_X ⊗ |phi_x purification>_{out,P} ⊗ sqrt(mu_x)|i>_F
    // followed by regrouping so the kept output factor leads.  A direct and
    // simpler dilation: build the channel's Stinespring isometry from the
    // Kraus operators K_{x,j,e} = sqrt(p eigenbasis)..., then embed the
    // isometry into a unitary.  We take the straightforward route below.
    const long din = in_dim();
    const long dout = out_dim();
    std::vector<Matrix> kraus;
    for (size_t x = 0; x < povm_.size(); ++x) {
        // mu_x = sum_j m_j |u_j><u_j|, phi_x = sum_l s_l |w_l><w_l|
        // => Kraus K_{x,j,l} = sqrt(m_j s_l) |w_l><u_j|.
        HermEig mu = herm_eig(povm_[x]);
        HermEig phi = herm_eig(states_[x]);
        for (long j = 0; j < mu.values.size(); ++j) {
            if (mu.values(j) <= 1e-14) continue;
            for (long l = 0; l < phi.values.size(); ++l) {
                if (phi.values(l) <= 1e-14) continue;
                kraus.push_back(std::sqrt(mu.values(j) * phi.values(l)) *
                                phi.vectors.col(l) * mu.vectors.col(j).adjoint());
            }
        }
    }
    // Pad with zero Kraus operators (they never fire) until the dilation
    // dimension dout * #kraus is a multiple of din.
    while ((dout * static_cast<long>(kraus.size())) % din != 0)
        kraus.push_back(Matrix::Zero(dout, din));
    const long env_out = static_cast<long>(kraus.size());
    const long total = dout * env_out;
    const long env_in = total / din;

    // Stack the Kraus slices into the isometry W: in -> out ⊗ env_out.
    Matrix w = Matrix::Zero(total, din);
    for (long e = 0; e < env_out; ++e)
        for (long o = 0; o < dout; ++o)
            for (long i = 0; i < din; ++i)
                w(o * env_out + e, i) = kraus[static_cast<size_t>(e)](o, i);

    // The dilation unitary only touches columns i * env_in (environment in
    // |0>); place W there and fill the rest with an orthonormal completion.
    Eigen::HouseholderQR<Matrix> qr(w);
    Matrix q = qr.householderQ();
    Matrix completion = q.rightCols(total - din);
    // Re-orthogonalize against W to wash out roundoff from the factorization.
    completion -= w * (w.adjoint() * completion);
    for (long c = 0; c < completion.cols(); ++c) {
        for (long p = 0; p < c; ++p)
            completion.col(c) -=
                completion.col(p) * (completion.col(p).adjoint() * completion.col(c));
        double n = completion.col(c).norm();
        if (n < 1e-10) throw BadDilation("EBChannel::dilate: completion failed");
        completion.col(c) /= n;
    }
    Matrix u = Matrix::Zero(total, total);
    long next = 0;
    for (long col = 0; col < total; ++col) {
        if (col % env_in == 0)
            u.col(col) = w.col(col / env_in);
        else
            u.col(col) = completion.col(next++);
    }
    return QuantumChannel(u, din, env_in, dout);
}

PureState purify(const DensityMatrix& rho) {
    HermEig eig = herm_eig(rho.rho);
    const long d = rho.dim();
    Vector psi = Vector::Zero(d * d);
    for (long i = 0; i < d; ++i) {
        double lam = eig.values(i);
        if (lam <= 0.0) continue;
        for (long s = 0; s < d; ++s) psi(i * d + s) = std::sqrt(lam) * eig.vectors(s, i);
    }
    psi /= psi.norm();  // guard tiny eigenvalue-clipping drift
    return PureState(psi);
}

} // namespace symkit
