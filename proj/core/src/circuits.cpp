#include "symkit/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "symkit/numerics.hpp"

namespace symkit {

namespace {

const double kInvSqrt2 = 0.7071067811865475244008443621048490;

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

Matrix qft_matrix(long d) {
    Matrix f(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (long j = 0; j < d; ++j)
        for (long k = 0; k < d; ++k) {
            double phase = 2.0 * M_PI * static_cast<double>(j) * static_cast<double>(k) /
                           static_cast<double>(d);
            f(j, k) = norm * Complex(std::cos(phase), std::sin(phase));
        }
    return f;
}

} // namespace

const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::S: return "S";
        case GateKind::T: return "T";
        case GateKind::CX: return "CX";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::QFT: return "QFT";
        case GateKind::Raw: return "raw";
        case GateKind::Controlled: return "controlled";
        case GateKind::Adjoint: return "adjoint";
    }
    return "?";
}

// ============================================================================
// Gate constructors
// ============================================================================

Gate Gate::simple(GateKind k, int target) {
    Gate g;
    g.kind = k;
    g.targets = {target};
    return g;
}

Gate Gate::two(GateKind k, int a, int b) {
    Gate g;
    g.kind = k;
    if (k == GateKind::CX || k == GateKind::CZ) {
        g.controls = {a};
        g.targets = {b};
    } else {
        throw BadGate("Gate::two: kind must be CX or CZ");
    }
    return g;
}

Gate Gate::swap(int a, int b) {
    Gate g;
    g.kind = GateKind::SWAP;
    g.targets = {a, b};
    return g;
}

Gate Gate::qft(int wire) {
    Gate g;
    g.kind = GateKind::QFT;
    g.targets = {wire};
    return g;
}

Gate Gate::raw(Matrix u, std::vector<int> targets) {
    Gate g;
    g.kind = GateKind::Raw;
    g.matrix = std::move(u);
    g.targets = std::move(targets);
    return g;
}

Gate Gate::controlled(Gate inner, std::vector<int> controls) {
    Gate g;
    g.kind = GateKind::Controlled;
    g.controls = std::move(controls);
    // The inner gate's full wire list (its own controls first) becomes the
    // target list of the wrapper, so wire accounting matches gate_unitary.
    g.targets = inner.controls;
    g.targets.insert(g.targets.end(), inner.targets.begin(), inner.targets.end());
    g.inner = std::make_shared<const Gate>(std::move(inner));
    return g;
}

Gate Gate::adjoint(Gate inner) {
    Gate g;
    g.kind = GateKind::Adjoint;
    g.targets = inner.targets;
    g.controls = inner.controls;
    g.inner = std::make_shared<const Gate>(std::move(inner));
    return g;
}

// ============================================================================
// GateCircuit
// ============================================================================

int GateCircuit::add_register(const std::string& name, int qubits) {
    if (qubits < 1) throw BadParams("add_register: qubit count must be positive");
    if (has_register(name)) throw BadParams("add_register: duplicate register " + name);
    int first = num_wires();
    registers_.push_back(Register{name, std::vector<long>(static_cast<size_t>(qubits), 2)});
    wire_dims_.insert(wire_dims_.end(), static_cast<size_t>(qubits), 2);
    require_dense_cap(dim(), "GateCircuit");
    return first;
}

int GateCircuit::add_qudit_register(const std::string& name, long dim_) {
    if (dim_ < 2) throw BadParams("add_qudit_register: dimension must be >= 2");
    if (has_register(name)) throw BadParams("add_qudit_register: duplicate register " + name);
    int first = num_wires();
    registers_.push_back(Register{name, {dim_}});
    wire_dims_.push_back(dim_);
    require_dense_cap(dim(), "GateCircuit");
    return first;
}

long GateCircuit::dim() const {
    long p = 1;
    for (long d : wire_dims_) p *= d;
    return p;
}

bool GateCircuit::has_register(const std::string& name) const {
    for (const Register& r : registers_)
        if (r.name == name) return true;
    return false;
}

int GateCircuit::wire(const std::string& name, int index) const {
    int base = 0;
    for (const Register& r : registers_) {
        if (r.name == name) {
            if (index < 0 || index >= static_cast<int>(r.wire_dims.size()))
                throw BadWire("wire: index " + std::to_string(index) +
                              " out of range for register " + name);
            return base + index;
        }
        base += static_cast<int>(r.wire_dims.size());
    }
    throw BadWire("wire: unknown register " + name);
}

void GateCircuit::validate_gate(const Gate& g) const {
    std::vector<int> all = g.controls;
    all.insert(all.end(), g.targets.begin(), g.targets.end());
    if (all.empty()) throw BadGate("gate has no wires");
    std::vector<int> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= num_wires())
            throw BadWire("gate wire " + std::to_string(sorted[i]) + " out of range");
        if (i > 0 && sorted[i] == sorted[i - 1])
            throw BadWire("gate lists wire " + std::to_string(sorted[i]) + " twice");
    }
    // Kind-specific shape rules; gate_unitary performs the deep validation.
    gate_unitary(g, wire_dims_);
}

void GateCircuit::append(Gate g) {
    validate_gate(g);
    gates_.push_back(std::move(g));
}

void GateCircuit::append_all(const std::vector<Gate>& gs) {
    for (const Gate& g : gs) append(g);
}

long GateCircuit::basis_index(const std::vector<long>& digits) const {
    if (digits.size() > wire_dims_.size())
        throw BadIndex("basis_index: more digits than wires");
    long idx = 0;
    for (size_t w = 0; w < wire_dims_.size(); ++w) {
        long digit = w < digits.size() ? digits[w] : 0;
        if (digit < 0 || digit >= wire_dims_[w])
            throw BadIndex("basis_index: digit out of range on wire " + std::to_string(w));
        idx = idx * wire_dims_[w] + digit;
    }
    return idx;
}

// ============================================================================
// Gate unitaries
// ============================================================================

Matrix gate_unitary(const Gate& g, const std::vector<long>& wire_dims) {
    auto require_qubit_targets = [&](size_t n) {
        if (g.targets.size() != n)
            throw BadGate(std::string(gate_kind_name(g.kind)) + ": expected " +
                          std::to_string(n) + " target wire(s)");
        for (int t : g.targets)
            if (wire_dims[static_cast<size_t>(t)] != 2)
                throw BadGate(std::string(gate_kind_name(g.kind)) +
                              ": target wire must have dimension 2");
    };
    auto require_qubit_controls = [&]() {
        for (int c : g.controls)
            if (wire_dims[static_cast<size_t>(c)] != 2)
                throw BadGate("control wires must have dimension 2");
    };

    switch (g.kind) {
        case GateKind::H:
            require_qubit_targets(1);
            return mat2(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
        case GateKind::X:
            require_qubit_targets(1);
            return mat2(0, 1, 1, 0);
        case GateKind::Y:
            require_qubit_targets(1);
            return mat2(0, Complex(0, -1), Complex(0, 1), 0);
        case GateKind::Z:
            require_qubit_targets(1);
            return mat2(1, 0, 0, -1);
        case GateKind::S:
            require_qubit_targets(1);
            return mat2(1, 0, 0, Complex(0, 1));
        case GateKind::T:
            require_qubit_targets(1);
            return mat2(1, 0, 0, Complex(kInvSqrt2, kInvSqrt2));
        case GateKind::CX: {
            require_qubit_targets(1);
            if (g.controls.size() != 1) throw BadGate("CX: expected one control");
            require_qubit_controls();
            Matrix m = Matrix::Identity(4, 4);
            m(2, 2) = 0; m(3, 3) = 0; m(2, 3) = 1; m(3, 2) = 1;
            return m;
        }
        case GateKind::CZ: {
            require_qubit_targets(1);
            if (g.controls.size() != 1) throw BadGate("CZ: expected one control");
            require_qubit_controls();
            Matrix m = Matrix::Identity(4, 4);
            m(3, 3) = -1;
            return m;
        }
        case GateKind::SWAP: {
            if (g.targets.size() != 2) throw BadGate("SWAP: expected two targets");
            long da = wire_dims[static_cast<size_t>(g.targets[0])];
            long db = wire_dims[static_cast<size_t>(g.targets[1])];
            if (da != db) throw BadGate("SWAP: wire dimensions differ");
            Matrix m = Matrix::Zero(da * db, da * db);
            for (long a = 0; a < da; ++a)
                for (long b = 0; b < db; ++b) m(a * db + b, b * da + a) = 1;
            return m;
        }
        case GateKind::QFT: {
            if (g.targets.size() != 1) throw BadGate("QFT: expected one target wire");
            return qft_matrix(wire_dims[static_cast<size_t>(g.targets[0])]);
        }
        case GateKind::Raw: {
            if (g.targets.empty()) throw BadGate("raw: no targets");
            long d = 1;
            for (int t : g.targets) d *= wire_dims[static_cast<size_t>(t)];
            if (g.matrix.rows() != d || g.matrix.cols() != d)
                throw BadGate("raw: matrix is " + std::to_string(g.matrix.rows()) + "x" +
                              std::to_string(g.matrix.cols()) + " but targets span dimension " +
                              std::to_string(d));
            require_unitary(g.matrix, "raw gate");
            return g.matrix;
        }
        case GateKind::Controlled: {
            if (!g.inner) throw BadGate("controlled: missing inner gate");
            if (g.controls.empty()) throw BadGate("controlled: no control wires");
            require_qubit_controls();
            Matrix u = gate_unitary(*g.inner, wire_dims);
            long nc = 1;
            for (size_t i = 0; i < g.controls.size(); ++i) nc *= 2;
            Matrix m = Matrix::Identity(nc * u.rows(), nc * u.rows());
            // Inner gate fires on the all-ones control pattern (last block).
            m.block((nc - 1) * u.rows(), (nc - 1) * u.rows(), u.rows(), u.rows()) = u;
            return m;
        }
        case GateKind::Adjoint: {
            if (!g.inner) throw BadGate("adjoint: missing inner gate");
            return gate_unitary(*g.inner, wire_dims).adjoint();
        }
    }
    throw BadGate("unknown gate kind");
}

// ============================================================================
// Simulation kernel
// ============================================================================

void apply_gate_matrix(Matrix& m, const Matrix& g, const std::vector<int>& wires,
                       const std::vector<long>& dims) {
    const int n = static_cast<int>(dims.size());
    long total = 1;
    for (long d : dims) total *= d;
    if (m.rows() != total) throw ShapeError("apply_gate_matrix: dimension mismatch");

    // Strides, wire 0 most significant.
    std::vector<long> stride(static_cast<size_t>(n));
    {
        long acc = 1;
        for (int k = n - 1; k >= 0; --k) {
            stride[static_cast<size_t>(k)] = acc;
            acc *= dims[static_cast<size_t>(k)];
        }
    }

    long dg = 1;
    for (int w : wires) dg *= dims[static_cast<size_t>(w)];
    if (g.rows() != dg || g.cols() != dg)
        throw ShapeError("apply_gate_matrix: gate matrix does not match wires");

    // Offsets of each gate configuration inside the full index.
    std::vector<long> gate_offsets(static_cast<size_t>(dg), 0);
    for (long c = 0; c < dg; ++c) {
        long rem = c, off = 0;
        for (size_t k = wires.size(); k-- > 0;) {
            long d = dims[static_cast<size_t>(wires[k])];
            off += (rem % d) * stride[static_cast<size_t>(wires[k])];
            rem /= d;
        }
        gate_offsets[static_cast<size_t>(c)] = off;
    }

    // Offsets of the untouched wires ("bases").
    std::vector<int> rest;
    for (int w = 0; w < n; ++w)
        if (std::find(wires.begin(), wires.end(), w) == wires.end()) rest.push_back(w);
    long nbases = total / dg;
    std::vector<long> base_offsets(static_cast<size_t>(nbases), 0);
    for (long b = 0; b < nbases; ++b) {
        long rem = b, off = 0;
        for (size_t k = rest.size(); k-- > 0;) {
            long d = dims[static_cast<size_t>(rest[k])];
            off += (rem % d) * stride[static_cast<size_t>(rest[k])];
            rem /= d;
        }
        base_offsets[static_cast<size_t>(b)] = off;
    }

    Matrix scratch(dg, m.cols());
    for (long b = 0; b < nbases; ++b) {
        const long base = base_offsets[static_cast<size_t>(b)];
        for (long c = 0; c < dg; ++c)
            scratch.row(c) = m.row(base + gate_offsets[static_cast<size_t>(c)]);
        scratch = g * scratch;
        for (long c = 0; c < dg; ++c)
            m.row(base + gate_offsets[static_cast<size_t>(c)]) = scratch.row(c);
    }
}

namespace {

std::vector<int> gate_wires(const Gate& g) {
    std::vector<int> w = g.controls;
    w.insert(w.end(), g.targets.begin(), g.targets.end());
    return w;
}

} // namespace

Matrix compile(const GateCircuit& c) {
    require_dense_cap(c.dim(), "compile");
    Matrix u = Matrix::Identity(c.dim(), c.dim());
    for (const Gate& g : c.gates())
        apply_gate_matrix(u, gate_unitary(g, c.wire_dims()), gate_wires(g), c.wire_dims());
    return u;
}

Vector apply_state(const GateCircuit& c, const Vector& in) {
    if (in.size() != c.dim()) throw ShapeError("apply_state: state dimension mismatch");
    Matrix m = in;
    for (const Gate& g : c.gates())
        apply_gate_matrix(m, gate_unitary(g, c.wire_dims()), gate_wires(g), c.wire_dims());
    return m.col(0);
}

PureState apply(const GateCircuit& c, long basis_index) {
    if (basis_index < 0 || basis_index >= c.dim())
        throw BadIndex("apply: index " + std::to_string(basis_index) +
                       " out of range for dimension " + std::to_string(c.dim()));
    Vector in = Vector::Zero(c.dim());
    in(basis_index) = 1.0;
    return PureState(apply_state(c, in));
}

GateCircuit conjugate_with(const GateCircuit& c, const std::vector<Gate>& inner) {
    GateCircuit out = c;  // same registers, same leading gates
    out.append_all(inner);
    const std::vector<Gate>& gs = c.gates();
    for (size_t i = gs.size(); i-- > 0;) out.append(Gate::adjoint(gs[i]));
    return out;
}

Gate shifted(const Gate& g, int offset) {
    Gate out = g;
    for (int& w : out.targets) w += offset;
    for (int& w : out.controls) w += offset;
    if (g.inner) out.inner = std::make_shared<Gate>(shifted(*g.inner, offset));
    return out;
}

void append_registers(GateCircuit& dst, const GateCircuit& src) {
    for (const Register& r : src.registers()) {
        if (r.wire_dims.size() == 1 && r.wire_dims[0] != 2)
            dst.add_qudit_register(r.name, r.wire_dims[0]);
        else
            dst.add_register(r.name, static_cast<int>(r.wire_dims.size()));
    }
}

// ============================================================================
// StatePrep
// ============================================================================

std::vector<long> StatePrep::kept_dims() const {
    const std::vector<long>& dims = circuit.wire_dims();
    if (keep.empty()) return dims;
    std::vector<long> out;
    for (size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= static_cast<int>(dims.size()))
            throw BadWire("StatePrep: keep wire out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw BadWire("StatePrep: keep must be strictly increasing");
        out.push_back(dims[static_cast<size_t>(keep[i])]);
    }
    return out;
}

std::vector<int> StatePrep::kept_wires() const {
    if (!keep.empty()) return keep;
    std::vector<int> all(circuit.wire_dims().size());
    std::iota(all.begin(), all.end(), 0);
    return all;
}

long StatePrep::dim() const {
    long p = 1;
    for (long d : kept_dims()) p *= d;
    return p;
}

PureState StatePrep::realize_pure() const {
    return apply(circuit, input_index);
}

DensityMatrix StatePrep::realize() const {
    PureState psi = realize_pure();
    if (keep.empty() || keep.size() == circuit.wire_dims().size())
        return DensityMatrix(psi.density());
    return DensityMatrix(partial_trace(psi.density(), circuit.wire_dims(), keep));
}

} // namespace symkit
