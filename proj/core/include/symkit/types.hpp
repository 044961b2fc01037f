#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "symkit/errors.hpp"

namespace symkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;   // dense complex, column-major storage
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Library-wide tolerances.  These are contract constants: validation and
/// reconstruction checks everywhere in the library use exactly these values.
namespace tol {
inline constexpr double herm = 1e-9;        // Hermiticity defect, absolute
inline constexpr double psd = 1e-9;         // eigenvalue floor for PSD checks
inline constexpr double trace = 1e-9;       // |tr - 1| for states
inline constexpr double unitary_per_dim = 1e-9;  // scaled by dimension
inline constexpr double recon_per_dim = 1e-9;    // scaled by dimension
} // namespace tol

/// Dense-path dimension caps.  Closed-form linear algebra is supported up to
/// dimension 4096; semidefinite programs up to block size 64.
namespace cap {
inline constexpr int dense_dim = 4096;
inline constexpr int sdp_dim = 64;
} // namespace cap

inline void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw ShapeError(std::string(what) + ": matrix is " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", expected square");
}

inline void require_dense_cap(long dim, const char* what) {
    if (dim > cap::dense_dim)
        throw DimensionCap(std::string(what) + ": dimension " + std::to_string(dim) +
                           " exceeds dense-path cap " + std::to_string(cap::dense_dim));
    if (dim < 1)
        throw ShapeError(std::string(what) + ": dimension must be positive");
}

/// A normalized pure state vector.
struct PureState {
    Vector amp;

    PureState() = default;
    explicit PureState(Vector v);       // validates norm within tol::trace
    long dim() const { return amp.size(); }
    Matrix density() const { return amp * amp.adjoint(); }
};

/// A density matrix: Hermitian, PSD, unit trace (validated on construction).
struct DensityMatrix {
    Matrix rho;

    DensityMatrix() = default;
    explicit DensityMatrix(Matrix m);   // validates within tol::{herm,psd,trace}
    long dim() const { return rho.rows(); }
};

/// Result of a measure computation.
///
/// value      : the measure itself.
/// lower/upper: certified enclosure.  Closed-form measures report
///              lower == upper == value; SDP-backed measures report the
///              primal/dual pair; see-saw lower bounds report
///              [found value, +inf-free trivial bound] as documented per kind.
/// argmax_g   : index of the maximizing group element for max-over-g measures,
///              -1 otherwise.  Ties break to the smallest index.
/// iterations : iteration count of the underlying solver (0 for closed form).
struct MeasureResult {
    std::string kind;
    double value = 0.0;
    double lower = 0.0;   // certified lower bound (== value for closed forms)
    double upper = 0.0;   // certified upper bound (== value for closed forms)
    int argmax_g = -1;    // maximizing group element where applicable
    int iterations = 0;
    bool converged = true;
    Vector opt_state;           // optimizer argument (size 0 when n/a)
    std::vector<double> trace;  // per-iteration values for alternating solvers

    double gap() const { return upper - lower; }
};

} // namespace symkit
