#include "symkit/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace symkit {

namespace {

// ----------------------------------------------------------------------------
// Schema helpers
// ----------------------------------------------------------------------------

const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.is_object())
        throw SchemaError(std::string(what) + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

const Json* opt_field(const Json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

long get_long(const Json& j, const char* what) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw SchemaError(std::string(what) + ": expected an integer");
    return j.get<long>();
}

std::uint64_t get_u64(const Json& j, const char* what) {
    if (!(j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0)))
        throw SchemaError(std::string(what) + ": expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

double get_double(const Json& j, const char* what) {
    if (!j.is_number())
        throw SchemaError(std::string(what) + ": expected a number");
    return j.get<double>();
}

std::string get_string(const Json& j, const char* what) {
    if (!j.is_string())
        throw SchemaError(std::string(what) + ": expected a string");
    return j.get<std::string>();
}

const Json& get_array(const Json& j, const char* what) {
    if (!j.is_array())
        throw SchemaError(std::string(what) + ": expected an array");
    return j;
}

// ----------------------------------------------------------------------------
// Wire references: "REG.i" strings (flat integer indices also accepted)
// ----------------------------------------------------------------------------

struct WireNames {
    std::vector<std::string> names;  // flat wire index -> "REG.i"

    explicit WireNames(const GateCircuit& c) {
        for (const Register& r : c.registers()) {
            if (r.name.empty() || r.name.find('.') != std::string::npos)
                throw SchemaError("circuit: register name \"" + r.name +
                                  "\" cannot be serialized (empty or contains '.')");
            for (size_t i = 0; i < r.wire_dims.size(); ++i)
                names.push_back(r.name + "." + std::to_string(i));
        }
    }
};

int parse_wire_ref(const GateCircuit& c, const Json& j, const char* what) {
    if (j.is_number_integer() || j.is_number_unsigned()) {
        const long w = j.get<long>();
        if (w < 0 || w >= c.num_wires())
            throw SchemaError(std::string(what) + ": wire index " + std::to_string(w) +
                              " out of range");
        return static_cast<int>(w);
    }
    const std::string ref = get_string(j, what);
    const size_t dot = ref.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == ref.size())
        throw SchemaError(std::string(what) + ": wire reference \"" + ref +
                          "\" is not of the form REG.i");
    const std::string reg = ref.substr(0, dot);
    long idx = 0;
    try {
        size_t used = 0;
        idx = std::stol(ref.substr(dot + 1), &used);
        if (used != ref.size() - dot - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw SchemaError(std::string(what) + ": wire reference \"" + ref +
                          "\" has a non-numeric index");
    }
    int base = 0;
    for (const Register& r : c.registers()) {
        if (r.name == reg) {
            if (idx < 0 || idx >= static_cast<long>(r.wire_dims.size()))
                throw SchemaError(std::string(what) + ": wire reference \"" + ref +
                                  "\" exceeds register size");
            return base + static_cast<int>(idx);
        }
        base += static_cast<int>(r.wire_dims.size());
    }
    throw SchemaError(std::string(what) + ": unknown register in \"" + ref + "\"");
}

std::vector<int> parse_wire_refs(const GateCircuit& c, const Json& j, const char* what) {
    std::vector<int> out;
    for (const Json& e : get_array(j, what)) out.push_back(parse_wire_ref(c, e, what));
    return out;
}

Json wire_refs_json(const WireNames& w, const std::vector<int>& wires) {
    Json a = Json::array();
    for (int i : wires) a.push_back(w.names.at(static_cast<size_t>(i)));
    return a;
}

// ----------------------------------------------------------------------------
// Gates
// ----------------------------------------------------------------------------

Json gate_to_json(const Gate& g, const WireNames& w) {
    Json j;
    j["kind"] = gate_kind_name(g.kind);
    switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::S:
        case GateKind::T:
        case GateKind::SWAP:
        case GateKind::QFT:
            j["targets"] = wire_refs_json(w, g.targets);
            break;
        case GateKind::CX:
        case GateKind::CZ:
            j["controls"] = wire_refs_json(w, g.controls);
            j["targets"] = wire_refs_json(w, g.targets);
            break;
        case GateKind::Raw:
            j["targets"] = wire_refs_json(w, g.targets);
            j["matrix"] = matrix_to_json(g.matrix);
            break;
        case GateKind::Controlled:
            j["controls"] = wire_refs_json(w, g.controls);
            j["inner"] = gate_to_json(*g.inner, w);
            break;
        case GateKind::Adjoint:
            j["inner"] = gate_to_json(*g.inner, w);
            break;
    }
    return j;
}

Gate gate_from_json(const GateCircuit& c, const Json& j) {
    const std::string kind = get_string(field(j, "kind", "gate"), "gate.kind");
    auto targets = [&]() { return parse_wire_refs(c, field(j, "targets", "gate"), "gate.targets"); };
    auto controls = [&]() { return parse_wire_refs(c, field(j, "controls", "gate"), "gate.controls"); };
    auto one = [&](const std::vector<int>& v, const char* what) {
        if (v.size() != 1)
            throw SchemaError(std::string(what) + ": expected exactly one wire");
        return v[0];
    };
    for (GateKind k : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::S,
                       GateKind::T})
        if (kind == gate_kind_name(k)) return Gate::simple(k, one(targets(), "gate.targets"));
    for (GateKind k : {GateKind::CX, GateKind::CZ})
        if (kind == gate_kind_name(k))
            return Gate::two(k, one(controls(), "gate.controls"),
                             one(targets(), "gate.targets"));
    if (kind == gate_kind_name(GateKind::SWAP)) {
        const std::vector<int> t = targets();
        if (t.size() != 2) throw SchemaError("SWAP gate: expected two target wires");
        return Gate::swap(t[0], t[1]);
    }
    if (kind == gate_kind_name(GateKind::QFT))
        return Gate::qft(one(targets(), "gate.targets"));
    if (kind == gate_kind_name(GateKind::Raw))
        return Gate::raw(matrix_from_json(field(j, "matrix", "raw gate")), targets());
    if (kind == gate_kind_name(GateKind::Controlled))
        return Gate::controlled(gate_from_json(c, field(j, "inner", "controlled gate")),
                                controls());
    if (kind == gate_kind_name(GateKind::Adjoint))
        return Gate::adjoint(gate_from_json(c, field(j, "inner", "adjoint gate")));
    throw SchemaError("gate: unknown kind \"" + kind + "\"");
}

bool power_of_two(long d) { return d > 0 && (d & (d - 1)) == 0; }

int log2_exact(long d) {
    int k = 0;
    while ((1L << k) < d) ++k;
    return k;
}

} // namespace

// ----------------------------------------------------------------------------
// Matrices
// ----------------------------------------------------------------------------

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (long i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    const Json& rows = get_array(j, "matrix");
    const long nr = static_cast<long>(rows.size());
    if (nr == 0) throw SchemaError("matrix: must have at least one row");
    const long nc = static_cast<long>(get_array(rows[0], "matrix row").size());
    if (nc == 0) throw SchemaError("matrix: rows must be nonempty");
    Matrix m(nr, nc);
    for (long i = 0; i < nr; ++i) {
        const Json& row = get_array(rows[static_cast<size_t>(i)], "matrix row");
        if (static_cast<long>(row.size()) != nc)
            throw SchemaError("matrix: ragged rows");
        for (long k = 0; k < nc; ++k) {
            const Json& e = get_array(row[static_cast<size_t>(k)], "matrix entry");
            if (e.size() != 2)
                throw SchemaError("matrix: entries must be [re, im] pairs");
            m(i, k) = Complex(get_double(e[0], "matrix entry"),
                              get_double(e[1], "matrix entry"));
        }
    }
    return m;
}

// ----------------------------------------------------------------------------
// Circuits
// ----------------------------------------------------------------------------

Json circuit_to_json(const GateCircuit& c) {
    const WireNames w(c);
    Json regs = Json::array();
    for (const Register& r : c.registers()) {
        Json reg;
        reg["name"] = r.name;
        const bool all_qubits = [&] {
            for (long d : r.wire_dims)
                if (d != 2) return false;
            return true;
        }();
        if (all_qubits)
            reg["qubits"] = r.wire_dims.size();
        else if (r.wire_dims.size() == 1)
            reg["dim"] = r.wire_dims[0];
        else
            throw SchemaError("circuit: register \"" + r.name +
                              "\" mixes qudit wires and cannot be serialized");
        regs.push_back(std::move(reg));
    }
    Json gates = Json::array();
    for (const Gate& g : c.gates()) gates.push_back(gate_to_json(g, w));
    Json j;
    j["registers"] = std::move(regs);
    j["gates"] = std::move(gates);
    return j;
}

GateCircuit circuit_from_json(const Json& j) {
    GateCircuit c;
    for (const Json& reg : get_array(field(j, "registers", "circuit"), "circuit.registers")) {
        const std::string name = get_string(field(reg, "name", "register"), "register.name");
        if (const Json* q = opt_field(reg, "qubits")) {
            c.add_register(name, static_cast<int>(get_long(*q, "register.qubits")));
        } else if (const Json* d = opt_field(reg, "dim")) {
            c.add_qudit_register(name, get_long(*d, "register.dim"));
        } else {
            throw SchemaError("register \"" + name + "\": needs \"qubits\" or \"dim\"");
        }
    }
    for (const Json& g : get_array(field(j, "gates", "circuit"), "circuit.gates"))
        c.append(gate_from_json(c, g));
    return c;
}

// ----------------------------------------------------------------------------
// Groups
// ----------------------------------------------------------------------------

Json group_to_json(const GroupRep& rep) {
    Json elements = Json::array();
    for (const Matrix& u : rep.elements())
        elements.push_back(Json{{"matrix", matrix_to_json(u)}});
    Json table = Json::array();
    for (const auto& row : rep.mult_table()) table.push_back(row);
    Json j;
    j["order"] = rep.order();
    j["elements"] = std::move(elements);
    j["mult_table"] = std::move(table);
    return j;
}

GroupRep group_from_json(const Json& j) {
    const long order = get_long(field(j, "order", "group"), "group.order");
    std::vector<Matrix> elements;
    for (const Json& e : get_array(field(j, "elements", "group"), "group.elements")) {
        if (const Json* m = opt_field(e, "matrix"))
            elements.push_back(matrix_from_json(*m));
        else if (const Json* c = opt_field(e, "circuit"))
            elements.push_back(compile(circuit_from_json(*c)));
        else
            throw SchemaError("group element: needs \"matrix\" or \"circuit\"");
    }
    if (static_cast<long>(elements.size()) != order)
        throw SchemaError("group: order " + std::to_string(order) + " but " +
                          std::to_string(elements.size()) + " elements");
    std::vector<std::vector<int>> table;
    for (const Json& row : get_array(field(j, "mult_table", "group"), "group.mult_table")) {
        std::vector<int> r;
        for (const Json& e : get_array(row, "group.mult_table row"))
            r.push_back(static_cast<int>(get_long(e, "group.mult_table entry")));
        table.push_back(std::move(r));
    }
    return GroupRep(std::move(elements), std::move(table));
}

// ----------------------------------------------------------------------------
// Channels
// ----------------------------------------------------------------------------

Json channel_to_json(const QuantumChannel& ch) {
    const bool qubit_form = power_of_two(ch.in_dim()) && power_of_two(ch.env_in_dim()) &&
                            power_of_two(ch.out_dim()) && power_of_two(ch.env_out_dim()) &&
                            ch.in_dim() * ch.env_in_dim() > 1;
    if (!qubit_form) {
        Json j;
        j["dilation_matrix"] = matrix_to_json(ch.dilation());
        j["in_dim"] = ch.in_dim();
        j["env_in_dim"] = ch.env_in_dim();
        j["out_dim"] = ch.out_dim();
        return j;
    }
    const int k_in = log2_exact(ch.in_dim());
    const int k_env = log2_exact(ch.env_in_dim());
    const int k_out = log2_exact(ch.out_dim());
    GateCircuit c;
    if (k_in > 0) c.add_register("I", k_in);
    if (k_env > 0) c.add_register("E", k_env);
    std::vector<int> all(static_cast<size_t>(k_in + k_env));
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    c.append(Gate::raw(ch.dilation(), all));
    const WireNames w(c);
    std::vector<int> traced;
    for (int i = k_out; i < k_in + k_env; ++i) traced.push_back(i);
    Json j;
    j["dilation"] = circuit_to_json(c);
    j["in_qubits"] = k_in;
    j["env_qubits"] = k_env;
    j["out_qubits"] = k_out;
    j["traced_out"] = wire_refs_json(w, traced);
    return j;
}

QuantumChannel channel_from_json(const Json& j) {
    if (const Json* m = opt_field(j, "dilation_matrix")) {
        return QuantumChannel(matrix_from_json(*m),
                              get_long(field(j, "in_dim", "channel"), "channel.in_dim"),
                              get_long(field(j, "env_in_dim", "channel"), "channel.env_in_dim"),
                              get_long(field(j, "out_dim", "channel"), "channel.out_dim"));
    }
    const GateCircuit c = circuit_from_json(field(j, "dilation", "channel"));
    const long in_q = get_long(field(j, "in_qubits", "channel"), "channel.in_qubits");
    const long env_q = get_long(field(j, "env_qubits", "channel"), "channel.env_qubits");
    const long out_q = get_long(field(j, "out_qubits", "channel"), "channel.out_qubits");
    const std::vector<long>& dims = c.wire_dims();
    const long n = c.num_wires();
    if (in_q < 0 || env_q < 0 || in_q + env_q != n)
        throw SchemaError("channel: in_qubits + env_qubits must equal the dilation's "
                          "wire count");
    std::vector<int> traced =
        parse_wire_refs(c, field(j, "traced_out", "channel"), "channel.traced_out");
    std::vector<bool> is_traced(static_cast<size_t>(n), false);
    for (int t : traced) {
        if (is_traced[static_cast<size_t>(t)])
            throw SchemaError("channel.traced_out: duplicate wire");
        is_traced[static_cast<size_t>(t)] = true;
    }
    std::vector<int> kept;
    for (int i = 0; i < n; ++i)
        if (!is_traced[static_cast<size_t>(i)]) kept.push_back(i);
    if (static_cast<long>(kept.size()) != out_q)
        throw SchemaError("channel: out_qubits does not match the wires left after "
                          "traced_out");

    long in_dim = 1, env_in = 1, out_dim = 1;
    for (long i = 0; i < in_q; ++i) in_dim *= dims[static_cast<size_t>(i)];
    for (long i = in_q; i < n; ++i) env_in *= dims[static_cast<size_t>(i)];
    for (int i : kept) out_dim *= dims[static_cast<size_t>(i)];

    // Rows of the dilation must enumerate (kept wires, traced wires) with the
    // kept block most significant; permute the compiled unitary accordingly.
    std::vector<int> order = kept;
    order.insert(order.end(), traced.begin(), traced.end());
    Matrix u = compile(c);
    const long total = u.rows();
    std::vector<long> stride(static_cast<size_t>(n), 1);
    for (long i = n - 2; i >= 0; --i)
        stride[static_cast<size_t>(i)] =
            stride[static_cast<size_t>(i + 1)] * dims[static_cast<size_t>(i + 1)];
    bool identity = true;
    for (size_t i = 0; i < order.size(); ++i)
        if (order[i] != static_cast<int>(i)) identity = false;
    if (!identity) {
        Matrix v(total, u.cols());
        for (long r = 0; r < total; ++r) {
            long next = 0;
            for (int w : order) {
                const long digit =
                    (r / stride[static_cast<size_t>(w)]) % dims[static_cast<size_t>(w)];
                next = next * dims[static_cast<size_t>(w)] + digit;
            }
            v.row(next) = u.row(r);
        }
        u = std::move(v);
    }
    return QuantumChannel(std::move(u), in_dim, env_in, out_dim);
}

// ----------------------------------------------------------------------------
// State preparations
// ----------------------------------------------------------------------------

Json state_prep_to_json(const StatePrep& p) {
    const WireNames w(p.circuit);
    Json j;
    j["circuit"] = circuit_to_json(p.circuit);
    j["input_index"] = p.input_index;
    j["keep"] = wire_refs_json(w, p.keep);
    return j;
}

StatePrep state_prep_from_json(const Json& j) {
    StatePrep p;
    p.circuit = circuit_from_json(field(j, "circuit", "state prep"));
    p.input_index = get_long(field(j, "input_index", "state prep"), "state_prep.input_index");
    if (const Json* k = opt_field(j, "keep"))
        p.keep = parse_wire_refs(p.circuit, *k, "state_prep.keep");
    if (p.input_index < 0 || p.input_index >= p.circuit.dim())
        throw SchemaError("state prep: input_index out of range");
    return p;
}

// ----------------------------------------------------------------------------
// Instances
// ----------------------------------------------------------------------------

Json instance_to_json(const SymmetryInstance& inst) {
    Json j;
    j["kind"] = problem_kind_name(inst.kind);
    if (inst.rep) j["group"] = group_to_json(*inst.rep);
    j["alpha"] = inst.alpha;
    j["beta"] = inst.beta;
    switch (inst.kind) {
        case ProblemKind::ChannelBose:
        case ProblemKind::ChannelBSE:
            if (!inst.channel) throw SchemaError("instance: channel kind without channel");
            j["channel"] = channel_to_json(*inst.channel);
            break;
        case ProblemKind::HamMaxSpec:
        case ProblemKind::HamAvgSpec:
            j["hamiltonian"] = matrix_to_json(inst.hamiltonian);
            j["time"] = inst.time;
            break;
        default:
            if (!inst.state) throw SchemaError("instance: state kind without state");
            j["state"] = state_prep_to_json(*inst.state);
            break;
    }
    return j;
}

SymmetryInstance instance_from_json(const Json& j) {
    SymmetryInstance inst;
    inst.kind = problem_kind_from_name(get_string(field(j, "kind", "instance"),
                                                  "instance.kind"));
    if (const Json* g = opt_field(j, "group")) inst.rep = group_from_json(*g);
    if (const Json* a = opt_field(j, "alpha")) inst.alpha = get_double(*a, "instance.alpha");
    if (const Json* b = opt_field(j, "beta")) inst.beta = get_double(*b, "instance.beta");
    switch (inst.kind) {
        case ProblemKind::ChannelBose:
        case ProblemKind::ChannelBSE:
            inst.channel = channel_from_json(field(j, "channel", "instance"));
            break;
        case ProblemKind::HamMaxSpec:
        case ProblemKind::HamAvgSpec:
            inst.hamiltonian = matrix_from_json(field(j, "hamiltonian", "instance"));
            inst.time = get_double(field(j, "time", "instance"), "instance.time");
            break;
        default:
            inst.state = state_prep_from_json(field(j, "state", "instance"));
            break;
    }
    validate_instance(inst);
    return inst;
}

// ----------------------------------------------------------------------------
// Protocols
// ----------------------------------------------------------------------------

Json protocol_to_json(const Protocol& p) {
    Json j;
    j["kind"] = protocol_kind_name(p.kind);
    switch (p.kind) {
        case ProtocolKind::BoseTest:
        case ProtocolKind::HSSwapTest:
        case ProtocolKind::UhlmannFid:
        case ProtocolKind::SepExtEB:
            if (!p.prep || !p.rep)
                throw SchemaError("protocol: state test without prep/group");
            j["prep"] = state_prep_to_json(*p.prep);
            j["group"] = group_to_json(*p.rep);
            break;
        case ProtocolKind::HamQMA:
        case ProtocolKind::HamQAM:
            if (!p.rep) throw SchemaError("protocol: Hamiltonian test without group");
            j["hamiltonian"] = matrix_to_json(p.hamiltonian);
            j["time"] = p.time;
            j["group"] = group_to_json(*p.rep);
            break;
        case ProtocolKind::QIP2Generic:
        case ProtocolKind::QIP3Generic:
            if (!p.u1 || !p.u2) throw SchemaError("protocol: game without u1/u2");
            j["u1"] = circuit_to_json(*p.u1);
            j["u2"] = circuit_to_json(*p.u2);
            j["input_x"] = p.input_x;
            j["sprime_wires"] = p.sprime_wires;
            break;
    }
    return j;
}

Protocol protocol_from_json(const Json& j) {
    const std::string kind = get_string(field(j, "kind", "protocol"), "protocol.kind");
    auto prep = [&] { return state_prep_from_json(field(j, "prep", "protocol")); };
    auto group = [&] { return group_from_json(field(j, "group", "protocol")); };
    if (kind == protocol_kind_name(ProtocolKind::BoseTest))
        return bose_test_protocol(group(), prep());
    if (kind == protocol_kind_name(ProtocolKind::HSSwapTest))
        return hs_swap_test_protocol(group(), prep());
    if (kind == protocol_kind_name(ProtocolKind::UhlmannFid))
        return uhlmann_protocol(prep(), group());
    if (kind == protocol_kind_name(ProtocolKind::SepExtEB))
        return sep_ext_protocol(prep(), group());
    if (kind == protocol_kind_name(ProtocolKind::HamQMA) ||
        kind == protocol_kind_name(ProtocolKind::HamQAM)) {
        const Matrix h = matrix_from_json(field(j, "hamiltonian", "protocol"));
        const double t = get_double(field(j, "time", "protocol"), "protocol.time");
        return kind == protocol_kind_name(ProtocolKind::HamQMA)
                   ? ham_qma_protocol(h, t, group())
                   : ham_qam_protocol(h, t, group());
    }
    if (kind == protocol_kind_name(ProtocolKind::QIP2Generic) ||
        kind == protocol_kind_name(ProtocolKind::QIP3Generic)) {
        GateCircuit u1 = circuit_from_json(field(j, "u1", "protocol"));
        GateCircuit u2 = circuit_from_json(field(j, "u2", "protocol"));
        std::vector<long> x;
        for (const Json& e : get_array(field(j, "input_x", "protocol"), "protocol.input_x"))
            x.push_back(get_long(e, "protocol.input_x entry"));
        const int sp = static_cast<int>(
            get_long(field(j, "sprime_wires", "protocol"), "protocol.sprime_wires"));
        return kind == protocol_kind_name(ProtocolKind::QIP2Generic)
                   ? qip2_protocol(std::move(u1), std::move(u2), std::move(x), sp)
                   : qip3_protocol(std::move(u1), std::move(u2), std::move(x), sp);
    }
    throw SchemaError("protocol: unknown kind \"" + kind + "\"");
}

// ----------------------------------------------------------------------------
// Result payloads
// ----------------------------------------------------------------------------

Json measure_to_json(const MeasureResult& r) {
    Json j;
    j["kind"] = r.kind;
    j["value"] = r.value;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["argmax_g"] = r.argmax_g;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    return j;
}

Json verify_report_to_json(const VerifyReport& r) {
    Json j;
    j["kind"] = r.kind;
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    j["max_deviation"] = r.max_deviation;
    j["seed"] = r.seed;
    j["passed"] = r.passed();
    return j;
}

// ----------------------------------------------------------------------------
// Files, parsing, hashing
// ----------------------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOError("cannot open \"" + path + "\" for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IOError("failed reading \"" + path + "\"");
    return std::move(ss).str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IOError("cannot open \"" + path + "\" for writing");
    out << content;
    if (!out) throw IOError("failed writing \"" + path + "\"");
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(e.what());
    }
}

Json load_json_file(const std::string& path) { return parse_json(read_file(path)); }

std::string dump_json(const Json& j, bool pretty) { return j.dump(pretty ? 2 : -1); }

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw IOError("SHA-256 digest computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

} // namespace symkit
