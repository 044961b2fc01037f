#include "symkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace symkit {

namespace {

// Multi-index helper: strides for row-major composite indices, factor 0 most
// significant, so index = sum_k i_k * stride[k] and stride[last] = 1.
std::vector<long> strides_of(const std::vector<long>& dims) {
    std::vector<long> s(dims.size());
    long acc = 1;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        s[static_cast<size_t>(k)] = acc;
        acc *= dims[static_cast<size_t>(k)];
    }
    return s;
}

long product_of(const std::vector<long>& dims) {
    long p = 1;
    for (long d : dims) {
        if (d < 1) throw ShapeError("subsystem dimensions must be positive");
        p *= d;
    }
    return p;
}

} // namespace

// ============================================================================
// Validation predicates
// ============================================================================

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m) {
    if (m.rows() != m.cols()) return false;
    const double tol = tol::unitary_per_dim * static_cast<double>(m.rows());
    Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_isometry(const Matrix& m) {
    if (m.rows() < m.cols()) return false;
    const double tol = tol::unitary_per_dim * static_cast<double>(m.rows());
    Matrix d = m.adjoint() * m - Matrix::Identity(m.cols(), m.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const Matrix& m, double tol) {
    if (!is_hermitian(m, tol::herm)) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0,
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

void require_hermitian(const Matrix& m, const char* what) {
    require_square(m, what);
    if (!is_hermitian(m))
        throw NotHermitian(std::string(what) + ": Hermiticity defect exceeds " +
                           std::to_string(tol::herm));
}

void require_unitary(const Matrix& m, const char* what) {
    require_square(m, what);
    if (!is_unitary(m))
        throw NotUnitary(std::string(what) + ": U†U deviates from identity");
}

void require_isometry(const Matrix& m, const char* what) {
    if (!is_isometry(m))
        throw NotIsometry(std::string(what) + ": V†V deviates from identity");
}

// ============================================================================
// Tensor algebra
// ============================================================================

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    require_dense_cap(a.rows() * b.rows(), "tensor_product");
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix tensor_product(const std::vector<Matrix>& factors) {
    if (factors.empty()) throw ShapeError("tensor_product: empty factor list");
    Matrix out = factors.front();
    for (size_t k = 1; k < factors.size(); ++k) out = tensor_product(out, factors[k]);
    return out;
}

Vector tensor_product(const Vector& a, const Vector& b) {
    require_dense_cap(a.size() * b.size(), "tensor_product");
    Vector out(a.size() * b.size());
    for (long i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

Matrix identity(long dim) {
    require_dense_cap(dim, "identity");
    return Matrix::Identity(dim, dim);
}

Matrix partial_trace(const Matrix& m, const std::vector<long>& dims,
                     const std::vector<int>& keep) {
    require_square(m, "partial_trace");
    const long total = product_of(dims);
    if (m.rows() != total)
        throw ShapeError("partial_trace: dims product " + std::to_string(total) +
                         " != matrix dimension " + std::to_string(m.rows()));
    const int n = static_cast<int>(dims.size());
    for (size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] < 0 || keep[k] >= n)
            throw ShapeError("partial_trace: keep index out of range");
        if (k > 0 && keep[k] <= keep[k - 1])
            throw ShapeError("partial_trace: keep must be strictly increasing");
    }

    std::vector<int> traced;
    for (int k = 0; k < n; ++k)
        if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);

    const std::vector<long> stride = strides_of(dims);
    long dk = 1, dt = 1;
    for (int k : keep) dk *= dims[static_cast<size_t>(k)];
    for (int k : traced) dt *= dims[static_cast<size_t>(k)];

    // Enumerate kept and traced multi-indices once; the composite row index is
    // the sum of the two contributions because strides partition the factors.
    std::vector<long> kept_offsets(static_cast<size_t>(dk), 0);
    for (long a = 0; a < dk; ++a) {
        long rem = a, off = 0;
        for (size_t k = keep.size(); k-- > 0;) {
            long d = dims[static_cast<size_t>(keep[k])];
            off += (rem % d) * stride[static_cast<size_t>(keep[k])];
            rem /= d;
        }
        kept_offsets[static_cast<size_t>(a)] = off;
    }
    std::vector<long> traced_offsets(static_cast<size_t>(dt), 0);
    for (long t = 0; t < dt; ++t) {
        long rem = t, off = 0;
        for (size_t k = traced.size(); k-- > 0;) {
            long d = dims[static_cast<size_t>(traced[k])];
            off += (rem % d) * stride[static_cast<size_t>(traced[k])];
            rem /= d;
        }
        traced_offsets[static_cast<size_t>(t)] = off;
    }

    Matrix out = Matrix::Zero(dk, dk);
    for (long a = 0; a < dk; ++a)
        for (long b = 0; b < dk; ++b) {
            Complex acc(0.0, 0.0);
            for (long t = 0; t < dt; ++t)
                acc += m(kept_offsets[static_cast<size_t>(a)] + traced_offsets[static_cast<size_t>(t)],
                         kept_offsets[static_cast<size_t>(b)] + traced_offsets[static_cast<size_t>(t)]);
            out(a, b) = acc;
        }
    return out;
}

namespace {

std::vector<long> permuted_index_map(const std::vector<long>& dims,
                                     const std::vector<int>& order) {
    const int n = static_cast<int>(dims.size());
    if (static_cast<int>(order.size()) != n)
        throw ShapeError("permute_systems: order length mismatch");
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int o : order) {
        if (o < 0 || o >= n || seen[static_cast<size_t>(o)])
            throw ShapeError("permute_systems: order is not a permutation");
        seen[static_cast<size_t>(o)] = true;
    }
    const std::vector<long> stride = strides_of(dims);
    std::vector<long> new_dims(order.size());
    for (size_t j = 0; j < order.size(); ++j)
        new_dims[j] = dims[static_cast<size_t>(order[j])];
    const std::vector<long> new_stride = strides_of(new_dims);
    const long total = product_of(dims);

    // map[new_index] = old_index
    std::vector<long> map(static_cast<size_t>(total), 0);
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx, old_idx = 0;
        for (size_t j = 0; j < order.size(); ++j) {
            long digit = rem / new_stride[j];
            rem %= new_stride[j];
            old_idx += digit * stride[static_cast<size_t>(order[j])];
        }
        map[static_cast<size_t>(idx)] = old_idx;
    }
    return map;
}

} // namespace

Matrix permute_systems(const Matrix& m, const std::vector<long>& dims,
                       const std::vector<int>& order) {
    require_square(m, "permute_systems");
    if (m.rows() != product_of(dims))
        throw ShapeError("permute_systems: dims product != matrix dimension");
    const std::vector<long> map = permuted_index_map(dims, order);
    Matrix out(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            out(i, j) = m(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]);
    return out;
}

Vector permute_systems(const Vector& v, const std::vector<long>& dims,
                       const std::vector<int>& order) {
    if (v.size() != product_of(dims))
        throw ShapeError("permute_systems: dims product != vector dimension");
    const std::vector<long> map = permuted_index_map(dims, order);
    Vector out(v.size());
    for (long i = 0; i < v.size(); ++i) out(i) = v(map[static_cast<size_t>(i)]);
    return out;
}

Matrix as_matrix(const Vector& psi, long dim_a, long dim_b) {
    if (psi.size() != dim_a * dim_b)
        throw ShapeError("as_matrix: vector length != dim_a * dim_b");
    Matrix x(dim_a, dim_b);
    for (long a = 0; a < dim_a; ++a)
        for (long b = 0; b < dim_b; ++b) x(a, b) = psi(a * dim_b + b);
    return x;
}

Vector as_vector(const Matrix& x) {
    Vector v(x.rows() * x.cols());
    for (long a = 0; a < x.rows(); ++a)
        for (long b = 0; b < x.cols(); ++b) v(a * x.cols() + b) = x(a, b);
    return v;
}

// ============================================================================
// Spectral routines
// ============================================================================

HermEig herm_eig(const Matrix& h) {
    require_hermitian(h, "herm_eig");
    require_dense_cap(h.rows(), "herm_eig");
    Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) / 2.0);
    if (es.info() != Eigen::Success)
        throw SolverFail("herm_eig: eigensolver did not converge");
    return HermEig{es.eigenvalues(), es.eigenvectors()};
}

RealVector singular_values(const Matrix& a) {
    // Contract: singular values come from the spectrum of A†A (clipped at 0),
    // which keeps every norm in the library on a single spectral code path.
    const bool tall = a.rows() >= a.cols();
    Matrix gram = tall ? Matrix(a.adjoint() * a) : Matrix(a * a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es((gram + gram.adjoint()) / 2.0,
                                             Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw SolverFail("singular_values: eigensolver did not converge");
    RealVector ev = es.eigenvalues();  // ascending
    RealVector out(ev.size());
    for (long i = 0; i < ev.size(); ++i) {
        double v = ev(ev.size() - 1 - i);
        out(i) = v > 0.0 ? std::sqrt(v) : 0.0;
    }
    return out;
}

Matrix sqrtm_psd(const Matrix& m) {
    require_hermitian(m, "sqrtm_psd");
    HermEig eig = herm_eig(m);
    const double floor = -tol::psd * static_cast<double>(m.rows()) *
                         std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    if (eig.values.minCoeff() < floor)
        throw NotPSD("sqrtm_psd: eigenvalue " + std::to_string(eig.values.minCoeff()) +
                     " below PSD floor");
    RealVector roots(eig.values.size());
    for (long i = 0; i < eig.values.size(); ++i)
        roots(i) = eig.values(i) > 0.0 ? std::sqrt(eig.values(i)) : 0.0;
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

Matrix expm_hermitian(const Matrix& h, double t) {
    HermEig eig = herm_eig(h);
    Vector phases(eig.values.size());
    for (long i = 0; i < eig.values.size(); ++i)
        phases(i) = std::exp(Complex(0.0, -eig.values(i) * t));
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

// ============================================================================
// Norms and distances
// ============================================================================

double trace_norm(const Matrix& a) {
    if (is_hermitian(a)) {
        // Hermitian fast path: singular values are |eigenvalues|.
        Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0,
                                                 Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().sum();
    }
    return singular_values(a).sum();
}

double hs_norm(const Matrix& a) { return a.norm(); }

double spectral_norm(const Matrix& a) {
    RealVector sv = singular_values(a);
    return sv.size() > 0 ? sv(0) : 0.0;
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw ShapeError("trace_distance: dimension mismatch");
    require_hermitian(rho, "trace_distance(rho)");
    require_hermitian(sigma, "trace_distance(sigma)");
    return 0.5 * trace_norm(rho - sigma);
}

double root_fidelity(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows())
        throw ShapeError("fidelity: dimension mismatch");
    // ||sqrt(rho) sqrt(sigma)||_1 = sum of sqrt eig of sqrt(sigma) rho sqrt(sigma).
    Matrix rs = sqrtm_psd(sigma);
    Matrix middle = rs * rho * rs;
    Eigen::SelfAdjointEigenSolver<Matrix> es((middle + middle.adjoint()) / 2.0,
                                             Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw SolverFail("root_fidelity: eigensolver did not converge");
    double acc = 0.0;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
        double v = es.eigenvalues()(i);
        if (v > 0.0) acc += std::sqrt(v);
    }
    return std::min(acc, 1.0 + 1e-12);
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
    double r = root_fidelity(rho, sigma);
    return std::min(r * r, 1.0);
}

double sine_distance(const Matrix& rho, const Matrix& sigma) {
    double f = fidelity(rho, sigma);
    return std::sqrt(std::max(0.0, 1.0 - f));
}

double purity(const Matrix& rho) {
    require_hermitian(rho, "purity");
    return (rho * rho).trace().real();
}

TopEig top_eig(const Matrix& h) {
    HermEig eig = herm_eig(h);
    const long last = eig.values.size() - 1;
    return TopEig{eig.values(last), eig.vectors.col(last)};
}

// ============================================================================
// Validated state wrappers
// ============================================================================

PureState::PureState(Vector v) : amp(std::move(v)) {
    if (amp.size() == 0) throw ShapeError("PureState: empty vector");
    require_dense_cap(amp.size(), "PureState");
    if (std::abs(amp.norm() - 1.0) > tol::trace)
        throw NotState("PureState: norm deviates from 1 by " +
                       std::to_string(std::abs(amp.norm() - 1.0)));
}

DensityMatrix::DensityMatrix(Matrix m) : rho(std::move(m)) {
    require_square(rho, "DensityMatrix");
    require_dense_cap(rho.rows(), "DensityMatrix");
    require_hermitian(rho, "DensityMatrix");
    if (std::abs(rho.trace().real() - 1.0) > tol::trace ||
        std::abs(rho.trace().imag()) > tol::trace)
        throw NotState("DensityMatrix: trace deviates from 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0,
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::psd * static_cast<double>(rho.rows()))
        throw NotState("DensityMatrix: negative eigenvalue " +
                       std::to_string(es.eigenvalues().minCoeff()));
}

} // namespace symkit
