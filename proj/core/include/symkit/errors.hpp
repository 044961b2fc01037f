#pragma once

#include <stdexcept>
#include <string>

namespace symkit {

/// Base class for all symkit errors.  Every error carries a stable
/// machine-readable code (returned by code()) so callers and the CLI can
/// map failures without parsing the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define SYMKIT_DEFINE_ERROR(NAME)                                   \
    class NAME : public Error {                                     \
    public:                                                         \
        explicit NAME(const std::string& msg) : Error(#NAME, msg) {} \
    }

// Shape/domain validation.
SYMKIT_DEFINE_ERROR(ShapeError);     // mismatched or non-square dimensions
SYMKIT_DEFINE_ERROR(DimensionCap);   // exceeds the supported dense-path caps
SYMKIT_DEFINE_ERROR(NotHermitian);
SYMKIT_DEFINE_ERROR(NotPSD);
SYMKIT_DEFINE_ERROR(NotState);       // trace or positivity violation
SYMKIT_DEFINE_ERROR(NotUnitary);
SYMKIT_DEFINE_ERROR(NotIsometry);

// Circuits.
SYMKIT_DEFINE_ERROR(BadWire);        // unknown register/wire reference
SYMKIT_DEFINE_ERROR(BadGate);        // malformed gate payload
SYMKIT_DEFINE_ERROR(BadIndex);       // basis-state index out of range
SYMKIT_DEFINE_ERROR(BadCircuit);     // circuit shape unfit for its role

// Groups and representations.
SYMKIT_DEFINE_ERROR(NotGroup);        // multiplication table is not a group
SYMKIT_DEFINE_ERROR(NotRep);          // matrices do not respect the table
SYMKIT_DEFINE_ERROR(ProjectivePhase); // representation only holds up to phase
SYMKIT_DEFINE_ERROR(NotInvolution);   // order-2 constructor given v with v^2 != I

// Channels.
SYMKIT_DEFINE_ERROR(BadDilation);    // inconsistent in/env/out factorization
SYMKIT_DEFINE_ERROR(BadPOVM);        // POVM elements not PSD or don't sum to I

// Optimization.
SYMKIT_DEFINE_ERROR(SolverFail);     // iteration cap hit before tolerance
SYMKIT_DEFINE_ERROR(Infeasible);     // constraint system has no solution
SYMKIT_DEFINE_ERROR(NonConvergence); // iterative routine stalled

// Thresholds, parameters, serialization.
SYMKIT_DEFINE_ERROR(BadThresholds);  // alpha/beta outside their admissible set
SYMKIT_DEFINE_ERROR(BadParams);
SYMKIT_DEFINE_ERROR(ParseError);     // malformed JSON
SYMKIT_DEFINE_ERROR(SchemaError);    // well-formed JSON, wrong shape
SYMKIT_DEFINE_ERROR(IOError);

#undef SYMKIT_DEFINE_ERROR

} // namespace symkit
