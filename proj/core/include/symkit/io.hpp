#pragma once

#include <string>

#include "json.hpp"
#include "symkit/channels.hpp"
#include "symkit/circuits.hpp"
#include "symkit/protocols.hpp"
#include "symkit/reductions.hpp"
#include "symkit/symmetry.hpp"
#include "symkit/types.hpp"

namespace symkit {

using Json = nlohmann::json;

// ============================================================================
// JSON formats.  Every number is an IEEE-754 double serialized so that
// parsing reproduces the exact bits (nlohmann emits the shortest decimal
// that round-trips); parse -> serialize -> parse is the identity.
//
// Matrix        [[ [re,im], ... ], ...]     row-major, rows of [re,im] pairs
// Circuit       {"registers":[{"name":"S","qubits":2} | {"name":"B","dim":3}],
//                "gates":[{"kind":"H","targets":["S.0"]},
//                         {"kind":"CX","controls":["S.0"],"targets":["S.1"]},
//                         {"kind":"SWAP","targets":["S.0","S.1"]},
//                         {"kind":"QFT","targets":["B.0"]},
//                         {"kind":"raw","targets":[...],"matrix":[...]},
//                         {"kind":"controlled","controls":[...],"inner":{...}},
//                         {"kind":"adjoint","inner":{...}}]}
//               Wires are "REG.i" references; register names must not
//               contain '.'.
// Group         {"order":k, "elements":[{"matrix":[...]} | {"circuit":{...}}],
//                "mult_table":[[...],...]}
// Channel       {"dilation":{circuit}, "in_qubits":n, "env_qubits":n,
//                "out_qubits":n, "traced_out":[wire refs]} where the circuit's
//               leading in_qubits wires carry the input, the rest start in
//               |0>, and traced_out lists the discarded output wires.  For
//               dimensions that are not powers of two the equivalent raw form
//               {"dilation_matrix":[...], "in_dim":d, "env_in_dim":d,
//                "out_dim":d} is accepted and emitted instead.
// StatePrep     {"circuit":{...}, "input_index":n, "keep":[wire refs]}
// Instance      {"kind":"state_bose", "group":{...}, "alpha":a, "beta":b,
//                plus "state" | "channel" | "hamiltonian"+"time" by kind}
// Protocol      {"kind":"BoseTest", plus "prep"+"group" |
//                "hamiltonian"+"time"+"group" |
//                "u1"+"u2"+"input_x"+"sprime_wires" by kind}
//
// Parsers throw SchemaError on well-formed JSON of the wrong shape and
// propagate the constructing type's own validation errors (BadWire, NotRep,
// BadDilation, ...).  parse_json throws ParseError on malformed text and
// file helpers throw IOError.
// ============================================================================

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json circuit_to_json(const GateCircuit& c);
GateCircuit circuit_from_json(const Json& j);

Json group_to_json(const GroupRep& rep);
GroupRep group_from_json(const Json& j);

Json channel_to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(const Json& j);

Json state_prep_to_json(const StatePrep& p);
StatePrep state_prep_from_json(const Json& j);

Json instance_to_json(const SymmetryInstance& inst);
SymmetryInstance instance_from_json(const Json& j);

Json protocol_to_json(const Protocol& p);
Protocol protocol_from_json(const Json& j);

// Output-only result payloads.
Json measure_to_json(const MeasureResult& r);
Json verify_report_to_json(const VerifyReport& r);

// Files, parsing, hashing.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
Json parse_json(const std::string& text);
Json load_json_file(const std::string& path);
std::string dump_json(const Json& j, bool pretty = false);

/// Hex SHA-256 of the given bytes (the digest used in run reports).
std::string sha256_hex(const std::string& bytes);

} // namespace symkit
