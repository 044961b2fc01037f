#include "symkit/symmetry.hpp"

#include <cmath>

#include "symkit/numerics.hpp"

namespace symkit {

GroupRep::GroupRep(std::vector<Matrix> elements, std::vector<std::vector<int>> mult_table)
    : elements_(std::move(elements)), mult_(std::move(mult_table)) {
    const int k = static_cast<int>(elements_.size());
    if (k == 0) throw NotGroup("GroupRep: empty element list");
    if (static_cast<int>(mult_.size()) != k)
        throw NotGroup("GroupRep: multiplication table has wrong row count");
    for (const auto& row : mult_)
        if (static_cast<int>(row.size()) != k)
            throw NotGroup("GroupRep: multiplication table is not square");

    const long d = elements_[0].rows();
    require_dense_cap(d, "GroupRep");
    for (int g = 0; g < k; ++g) {
        if (elements_[static_cast<size_t>(g)].rows() != d ||
            elements_[static_cast<size_t>(g)].cols() != d)
            throw ShapeError("GroupRep: element " + std::to_string(g) +
                             " has mismatched dimensions");
        require_unitary(elements_[static_cast<size_t>(g)],
                        ("GroupRep element " + std::to_string(g)).c_str());
    }

    // Table axioms: entries in range, rows and columns are permutations,
    // element 0 acts as a two-sided identity, every element has a two-sided
    // inverse, and the table is associative.
    for (int g = 0; g < k; ++g) {
        std::vector<bool> row_seen(static_cast<size_t>(k), false);
        std::vector<bool> col_seen(static_cast<size_t>(k), false);
        for (int h = 0; h < k; ++h) {
            int gh = mult_[static_cast<size_t>(g)][static_cast<size_t>(h)];
            int hg = mult_[static_cast<size_t>(h)][static_cast<size_t>(g)];
            if (gh < 0 || gh >= k || hg < 0 || hg >= k)
                throw NotGroup("GroupRep: table entry out of range");
            if (row_seen[static_cast<size_t>(gh)])
                throw NotGroup("GroupRep: row " + std::to_string(g) +
                               " is not a permutation");
            if (col_seen[static_cast<size_t>(hg)])
                throw NotGroup("GroupRep: column " + std::to_string(g) +
                               " is not a permutation");
            row_seen[static_cast<size_t>(gh)] = true;
            col_seen[static_cast<size_t>(hg)] = true;
        }
        if (mult_[0][static_cast<size_t>(g)] != g || mult_[static_cast<size_t>(g)][0] != g)
            throw NotGroup("GroupRep: element 0 is not a two-sided identity");
    }
    inverse_.assign(static_cast<size_t>(k), -1);
    for (int g = 0; g < k; ++g) {
        for (int h = 0; h < k; ++h)
            if (multiply(g, h) == 0 && multiply(h, g) == 0) {
                inverse_[static_cast<size_t>(g)] = h;
                break;
            }
        if (inverse_[static_cast<size_t>(g)] < 0)
            throw NotGroup("GroupRep: element " + std::to_string(g) +
                           " has no two-sided inverse");
    }
    for (int g = 0; g < k; ++g)
        for (int h = 0; h < k; ++h)
            for (int l = 0; l < k; ++l)
                if (multiply(multiply(g, h), l) != multiply(g, multiply(h, l)))
                    throw NotGroup("GroupRep: multiplication table is not associative");

    // Representation property.  Identity first, then closure under products.
    const double tol_rep = tol::unitary_per_dim * static_cast<double>(d);
    if ((elements_[0] - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol_rep)
        throw NotRep("GroupRep: element 0 is not the identity matrix");
    for (int g = 0; g < k; ++g)
        for (int h = 0; h < k; ++h) {
            Matrix prod = element(g) * element(h);
            const Matrix& target = element(multiply(g, h));
            if ((prod - target).cwiseAbs().maxCoeff() <= tol_rep) continue;
            // Distinguish a projective representation (prod = phase * target
            // with a consistent unimodular phase) from a plain failure.
            Matrix defect = target.adjoint() * prod;
            Complex phase = defect.trace() / static_cast<double>(d);
            if (std::abs(std::abs(phase) - 1.0) <= tol_rep &&
                (defect - phase * Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol_rep)
                throw ProjectivePhase(
                    "GroupRep: U(" + std::to_string(g) + ")U(" + std::to_string(h) +
                    ") differs from U(gh) by phase arg=" + std::to_string(std::arg(phase)) +
                    "; projective representations are not supported");
            throw NotRep("GroupRep: U(" + std::to_string(g) + ")U(" + std::to_string(h) +
                         ") does not match U(gh)");
        }
}

Matrix projector(const GroupRep& rep) {
    const long d = rep.dim();
    Matrix p = Matrix::Zero(d, d);
    for (int g = 0; g < rep.order(); ++g) p += rep.element(g);
    p /= static_cast<double>(rep.order());
    const double tol_proj = 1e-9 * static_cast<double>(d);
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > tol_proj)
        throw NotRep("projector: group average is not Hermitian");
    if ((p * p - p).cwiseAbs().maxCoeff() > tol_proj)
        throw NotRep("projector: group average is not idempotent");
    return (p + p.adjoint()) / 2.0;
}

Matrix twirl(const GroupRep& rep, const Matrix& x) {
    if (x.rows() != rep.dim() || x.cols() != rep.dim())
        throw ShapeError("twirl: operand dimension does not match representation");
    Matrix out = Matrix::Zero(rep.dim(), rep.dim());
    for (int g = 0; g < rep.order(); ++g)
        out += rep.element(g) * x * rep.element(g).adjoint();
    return out / static_cast<double>(rep.order());
}

GroupRep shift_rep(long d) {
    if (d < 1) throw BadParams("shift_rep: dimension must be positive");
    std::vector<Matrix> elems;
    elems.reserve(static_cast<size_t>(d));
    for (long x = 0; x < d; ++x) {
        Matrix m = Matrix::Zero(d, d);
        for (long j = 0; j < d; ++j) m((j + x) % d, j) = 1.0;
        elems.push_back(std::move(m));
    }
    std::vector<std::vector<int>> table(static_cast<size_t>(d),
                                        std::vector<int>(static_cast<size_t>(d)));
    for (long x = 0; x < d; ++x)
        for (long y = 0; y < d; ++y)
            table[static_cast<size_t>(x)][static_cast<size_t>(y)] =
                static_cast<int>((x + y) % d);
    return GroupRep(std::move(elems), std::move(table));
}

GroupRep c2_from_unitary(const Matrix& v) {
    require_unitary(v, "c2_from_unitary");
    const long d = v.rows();
    const double tol_inv = tol::unitary_per_dim * static_cast<double>(d);
    if ((v * v - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol_inv)
        throw NotInvolution("c2_from_unitary: v^2 deviates from identity");
    return GroupRep({Matrix::Identity(d, d), v}, {{0, 1}, {1, 0}});
}

GroupRep trivial_rep(long dim) {
    return GroupRep({Matrix::Identity(dim, dim)}, {{0}});
}

GroupRep embed_rep(const GroupRep& rep, long dim_left, long dim_right) {
    if (dim_left < 1 || dim_right < 1)
        throw BadParams("embed_rep: embedding dimensions must be positive");
    std::vector<Matrix> elems;
    elems.reserve(static_cast<size_t>(rep.order()));
    for (int g = 0; g < rep.order(); ++g) {
        Matrix m = rep.element(g);
        if (dim_left > 1) m = tensor_product(Matrix::Identity(dim_left, dim_left), m);
        if (dim_right > 1) m = tensor_product(m, Matrix::Identity(dim_right, dim_right));
        elems.push_back(std::move(m));
    }
    return GroupRep(std::move(elems), rep.mult_table());
}

bool is_g_symmetric(const Matrix& rho, const GroupRep& rep, double tol) {
    for (int g = 0; g < rep.order(); ++g)
        if ((rep.element(g) * rho - rho * rep.element(g)).cwiseAbs().maxCoeff() >
            tol * static_cast<double>(rep.dim()))
            return false;
    return true;
}

bool is_bose_symmetric(const Matrix& rho, const GroupRep& rep, double tol) {
    Matrix p = projector(rep);
    return (p * rho * p - rho).cwiseAbs().maxCoeff() <= tol * static_cast<double>(rep.dim());
}

double gamma_bound(int group_order) {
    if (group_order < 1) throw BadParams("gamma_bound: order must be positive");
    return 2.0 * (1.0 - 1.0 / static_cast<double>(group_order));
}

} // namespace symkit
