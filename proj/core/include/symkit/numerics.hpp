#pragma once

#include <vector>

#include "symkit/types.hpp"

namespace symkit {

// ============================================================================
// Validation predicates
// ============================================================================

bool is_hermitian(const Matrix& m, double tol = tol::herm);
bool is_unitary(const Matrix& m);                  // tol scales with dimension
bool is_isometry(const Matrix& m);                 // m.adjoint()*m == I
bool is_psd(const Matrix& m, double tol = tol::psd);

void require_hermitian(const Matrix& m, const char* what);
void require_unitary(const Matrix& m, const char* what);
void require_isometry(const Matrix& m, const char* what);

// ============================================================================
// Tensor algebra
// ============================================================================

/// Kronecker product, first factor most significant: (a ⊗ b)[i*db+k, j*db+l].
Matrix tensor_product(const Matrix& a, const Matrix& b);
Matrix tensor_product(const std::vector<Matrix>& factors);
Vector tensor_product(const Vector& a, const Vector& b);

Matrix identity(long dim);

/// Trace out every subsystem not listed in `keep`.  `dims` are the subsystem
/// dimensions in tensor order (factor 0 most significant); `keep` must be
/// strictly increasing.  The kept factors stay in their original order.
Matrix partial_trace(const Matrix& m, const std::vector<long>& dims,
                     const std::vector<int>& keep);

/// Reorder tensor factors: output factor j is input factor order[j].
/// `order` must be a permutation of 0..dims.size()-1.
Matrix permute_systems(const Matrix& m, const std::vector<long>& dims,
                       const std::vector<int>& order);
Vector permute_systems(const Vector& v, const std::vector<long>& dims,
                       const std::vector<int>& order);

/// View a bipartite vector |psi> on A⊗B (A most significant) as the dimA x
/// dimB coefficient matrix X with psi[a*dimB + b] = X(a, b).
Matrix as_matrix(const Vector& psi, long dim_a, long dim_b);
Vector as_vector(const Matrix& x);  // inverse of as_matrix

// ============================================================================
// Spectral routines
// ============================================================================

struct HermEig {
    RealVector values;  // ascending
    Matrix vectors;     // columns are eigenvectors, same order
};

/// Eigendecomposition of a Hermitian matrix (input is validated and
/// symmetrized before factorization).
HermEig herm_eig(const Matrix& h);

/// Singular values, descending, computed as sqrt of the clipped spectrum of
/// A†A (A may be rectangular).
RealVector singular_values(const Matrix& a);

/// PSD square root via eigendecomposition with negative eigenvalues clipped
/// to zero.  Input must be Hermitian; eigenvalues below -tol::psd*dim raise
/// NotPSD.
Matrix sqrtm_psd(const Matrix& m);

/// exp(-i*H*t) for Hermitian H (evolution convention; pass t<0 to invert).
Matrix expm_hermitian(const Matrix& h, double t);

// ============================================================================
// Norms and distances
// ============================================================================

double trace_norm(const Matrix& a);     // sum of singular values
double hs_norm(const Matrix& a);        // Frobenius
double spectral_norm(const Matrix& a);  // largest singular value

/// 0.5 * || rho - sigma ||_1 for Hermitian arguments.
double trace_distance(const Matrix& rho, const Matrix& sigma);

/// Uhlmann fidelity F(rho, sigma) = || sqrt(rho) sqrt(sigma) ||_1^2, in [0,1].
double fidelity(const Matrix& rho, const Matrix& sigma);
double root_fidelity(const Matrix& rho, const Matrix& sigma);

/// Sine distance sqrt(1 - F(rho, sigma)); a metric on states.
double sine_distance(const Matrix& rho, const Matrix& sigma);

double purity(const Matrix& rho);  // tr[rho^2]

/// Largest eigenvalue and eigenvector of a Hermitian matrix.
struct TopEig {
    double value;
    Vector vector;
};
TopEig top_eig(const Matrix& h);

} // namespace symkit
