#pragma once

#include <optional>
#include <vector>

#include "symkit/types.hpp"

namespace symkit {

/// A completely positive trace-preserving map stored as a Stinespring
/// dilation: a unitary U on in ⊗ env_in (input factor most significant, the
/// environment initialized to |0>), whose output space factors as
/// out ⊗ env_out with the trailing env_out factor traced away.
///
/// Kraus operators and the Choi matrix are derived views, computed on first
/// use and cached.
class QuantumChannel {
public:
    QuantumChannel(Matrix dilation, long in_dim, long env_in_dim, long out_dim);

    long in_dim() const { return in_dim_; }
    long env_in_dim() const { return env_in_dim_; }
    long out_dim() const { return out_dim_; }
    long env_out_dim() const { return env_out_dim_; }
    const Matrix& dilation() const { return dilation_; }

    /// N(rho): validates the input dimension only; rho need not be a state.
    Matrix apply(const Matrix& rho) const;

    /// Adjoint (Heisenberg picture) map N†(m) for m on the output space.
    Matrix adjoint_apply(const Matrix& m) const;

    /// Kraus operators K_e = (I ⊗ <e|) U (I ⊗ |0>), e = 0..env_out-1.
    const std::vector<Matrix>& kraus() const;

    /// Choi matrix sum_{ij} |i><j| ⊗ N(|i><j|) (input factor first,
    /// unnormalized: partial trace over the output factor equals I_in).
    const Matrix& choi() const;

private:
    Matrix dilation_;
    long in_dim_, env_in_dim_, out_dim_, env_out_dim_;
    mutable std::optional<std::vector<Matrix>> kraus_;
    mutable std::optional<Matrix> choi_;
};

/// Entanglement-breaking channel: measure with a POVM {mu_x}, prepare phi_x.
/// Validation: every mu_x PSD, sum mu_x = I within 1e-9 * dim, every phi_x a
/// density matrix.
class EBChannel {
public:
    EBChannel(std::vector<Matrix> povm, std::vector<Matrix> states);

    long in_dim() const { return povm_.empty() ? 0 : povm_[0].rows(); }
    long out_dim() const { return states_.empty() ? 0 : states_[0].rows(); }
    int outcomes() const { return static_cast<int>(povm_.size()); }
    const std::vector<Matrix>& povm() const { return povm_; }
    const std::vector<Matrix>& states() const { return states_; }

    /// sum_x tr[mu_x rho] phi_x.
    Matrix apply(const Matrix& rho) const;

    /// Extension action on a bipartite state on in ⊗ spec (input factor most
    /// significant): sum_x phi_x ⊗ Tr_in[(mu_x ⊗ I) omega].  Returns a matrix
    /// on out ⊗ spec.
    Matrix extend(const Matrix& omega, long dim_spec) const;

    /// Lift to a QuantumChannel (isometric dilation built from the POVM's
    /// square roots and purifications of the output states).
    QuantumChannel dilate() const;

private:
    std::vector<Matrix> povm_;
    std::vector<Matrix> states_;
};

/// Canonical purification |psi>_{RS} = sum_i sqrt(lambda_i) |i>_R |v_i>_S of
/// rho (reference factor R most significant, dim R = dim rho).
PureState purify(const DensityMatrix& rho);

} // namespace symkit
