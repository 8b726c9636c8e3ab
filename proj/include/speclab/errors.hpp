#pragma once

#include <stdexcept>
#include <string>

namespace speclab {

enum class ErrorCode {
    SelfIntersecting,
    ClockwiseOrDegenerate,
    LabelCountMismatch,
    EmptyPart,
    NothingToShrink,
    EarClippingFailed,
    DegenerateTriangle,
    MassNotPD,
    ConvergenceFailure,
    DomainMismatch,
    NotConvex,
    DegreeOverflow,
    BoundaryConditionViolated,
    SchemaError,
};

/// Exception type carrying a machine-readable error code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

const char* to_string(ErrorCode code);

} // namespace speclab
