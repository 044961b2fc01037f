#pragma once

#include <memory>
#include <string>
#include <vector>

#include "symkit/types.hpp"

namespace symkit {

/// A named register: a contiguous run of wires, each with its own dimension.
/// Qubit registers hold n wires of dimension 2; qudit registers (used for
/// group-index registers) hold a single wire of dimension d.
struct Register {
    std::string name;
    std::vector<long> wire_dims;
};

enum class GateKind {
    H, X, Y, Z, S, T,   // single-qubit
    CX, CZ, SWAP,       // two-wire
    QFT,                // single qudit wire of any dimension
    Raw,                // explicit unitary on the listed target wires
    Controlled,         // inner gate applied when all control qubits are |1>
    Adjoint             // inverse of the inner gate
};

const char* gate_kind_name(GateKind k);

/// One gate application.  Wires are flat indices into the circuit's wire
/// list; targets[0] is the most significant wire of the gate's own matrix.
struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> targets;
    std::vector<int> controls;           // CX/CZ/Controlled only
    Matrix matrix;                       // Raw only
    std::shared_ptr<const Gate> inner;   // Controlled/Adjoint only

    static Gate simple(GateKind k, int target);
    static Gate two(GateKind k, int a, int b);  // CX/CZ: a = control, b = target
    static Gate swap(int a, int b);
    static Gate qft(int wire);
    static Gate raw(Matrix u, std::vector<int> targets);
    static Gate controlled(Gate inner, std::vector<int> controls);
    static Gate adjoint(Gate inner);
};

/// A gate list over declared registers.  Wire 0 (the first wire of the first
/// register) is the most significant index of the composite space.
class GateCircuit {
public:
    GateCircuit() = default;

    /// Declare a register of `qubits` dimension-2 wires; returns the flat
    /// index of its first wire.
    int add_register(const std::string& name, int qubits);
    /// Declare a single-wire register of dimension `dim`.
    int add_qudit_register(const std::string& name, long dim);

    const std::vector<Register>& registers() const { return registers_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<long>& wire_dims() const { return wire_dims_; }
    int num_wires() const { return static_cast<int>(wire_dims_.size()); }
    long dim() const;                    // product of wire dimensions

    /// Flat index of wire `index` within register `name`.
    int wire(const std::string& name, int index = 0) const;
    bool has_register(const std::string& name) const;

    void append(Gate g);                 // validates wире indices and dims
    void append_all(const std::vector<Gate>& gs);

    /// Basis index of the product basis state whose digit on wire w is
    /// digits[w] (missing trailing digits are zero).
    long basis_index(const std::vector<long>& digits) const;

private:
    void validate_gate(const Gate& g) const;

    std::vector<Register> registers_;
    std::vector<long> wire_dims_;
    std::vector<Gate> gates_;
};

/// Unitary matrix of a single gate on its own wires (controls included,
/// controls most significant, then targets in listed order).
Matrix gate_unitary(const Gate& g, const std::vector<long>& wire_dims);

/// Full unitary of the circuit: the product of gate embeddings, last gate
/// leftmost, so compile(c1 ++ c2) == compile(c2) * compile(c1).
Matrix compile(const GateCircuit& c);

/// Apply the circuit to a state vector / to the computational basis state
/// with the given index (faster than materializing compile()).
Vector apply_state(const GateCircuit& c, const Vector& in);
PureState apply(const GateCircuit& c, long basis_index);

/// In-place kernel: m <- G_embedded * m where g acts on the listed wires of
/// the composite space described by dims.  Exposed for reuse by simulators.
void apply_gate_matrix(Matrix& m, const Matrix& g, const std::vector<int>& wires,
                       const std::vector<long>& dims);

/// Circuit computing C† · inner · C (as an operator product: first the gates
/// of c, then the inner gates, then c reversed with each gate adjointed).
/// The returned circuit shares c's registers; inner gates may address any of
/// them.
GateCircuit conjugate_with(const GateCircuit& c, const std::vector<Gate>& inner);

/// Copy of g with every target and control wire shifted by `offset`
/// (recursing into controlled inners).  Used when splicing a circuit's gates
/// into a larger circuit whose leading wires are new.
Gate shifted(const Gate& g, int offset);

/// Append all of src's registers to dst (same names, same wire dims).
/// Throws BadParams if a register name already exists in dst.
void append_registers(GateCircuit& dst, const GateCircuit& src);

/// Deferred state preparation: run `circuit` on the computational basis state
/// `input_index`, keep the listed wires (strictly increasing; empty = all),
/// trace the rest.
struct StatePrep {
    GateCircuit circuit;
    long input_index = 0;
    std::vector<int> keep;

    std::vector<long> kept_dims() const;
    std::vector<int> kept_wires() const; // keep, or all wires when keep is empty
    long dim() const;                    // dimension of the realized state
    DensityMatrix realize() const;
    /// The prepared pure state before tracing (keep must be empty to view it
    /// as a PureState of the full space).
    PureState realize_pure() const;
};

} // namespace symkit
