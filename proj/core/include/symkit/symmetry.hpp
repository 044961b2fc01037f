#pragma once

#include <vector>

#include "symkit/types.hpp"

namespace symkit {

/// A finite group given by its multiplication table together with a unitary
/// representation.  Element 0 is always the identity.  Construction validates
/// the table (permutation rows/columns, identity, two-sided inverses,
/// associativity) and the representation property U(g)U(h) = U(gh); a
/// consistent nontrivial global phase raises ProjectivePhase, anything else
/// NotRep.
class GroupRep {
public:
    GroupRep(std::vector<Matrix> elements, std::vector<std::vector<int>> mult_table);

    int order() const { return static_cast<int>(elements_.size()); }
    long dim() const { return elements_.empty() ? 0 : elements_[0].rows(); }
    const Matrix& element(int g) const { return elements_.at(static_cast<size_t>(g)); }
    const std::vector<Matrix>& elements() const { return elements_; }
    int multiply(int g, int h) const {
        return mult_[static_cast<size_t>(g)][static_cast<size_t>(h)];
    }
    const std::vector<std::vector<int>>& mult_table() const { return mult_; }
    int inverse(int g) const { return inverse_[static_cast<size_t>(g)]; }

private:
    std::vector<Matrix> elements_;
    std::vector<std::vector<int>> mult_;
    std::vector<int> inverse_;
};

/// Group projector (1/|G|) sum_g U(g).  For a true representation this is a
/// Hermitian idempotent; both properties are verified to 1e-9 * dim before
/// returning.
Matrix projector(const GroupRep& rep);

/// Twirl (1/|G|) sum_g U(g) X U(g)†.  Self-adjoint as a superoperator, so it
/// doubles as its own adjoint in constraint builders.
Matrix twirl(const GroupRep& rep, const Matrix& x);

/// Cyclic shift representation of Z_d on a d-dimensional space:
/// element x maps |j> to |j + x mod d>.
GroupRep shift_rep(long d);

/// Order-2 group {I, v}; v must square to the identity (else NotInvolution).
GroupRep c2_from_unitary(const Matrix& v);

/// Trivial representation {I} on a dim-dimensional space.
GroupRep trivial_rep(long dim);

/// The representation g -> I_left ⊗ U(g) ⊗ I_right on an enlarged space.
GroupRep embed_rep(const GroupRep& rep, long dim_left, long dim_right);

/// Whether rho is invariant under every U(g) (G-symmetric): twirl fixed point.
bool is_g_symmetric(const Matrix& rho, const GroupRep& rep, double tol = 1e-9);

/// Whether rho is G-Bose symmetric: Pi rho Pi = rho.
bool is_bose_symmetric(const Matrix& rho, const GroupRep& rep, double tol = 1e-9);

/// Upper bound 2(1 - 1/|G|) on the Hilbert-Schmidt asymmetry measure.
double gamma_bound(int group_order);

} // namespace symkit
