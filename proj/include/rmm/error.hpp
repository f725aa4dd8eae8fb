#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rmm {

enum class ErrorCode {
    InvalidArgument = 1,
    SingularCurve,
    NonIntegralResult,
    ZeroScale,
    PointNotOnCurve,
    NotASignature,
    NotAdmissible,
    FactorizationTooHard,
    NotMinimal,
    UnsupportedPrime,
    UnsupportedTorsion,
    GcdViolation,
    SignViolation,
    ParityViolation,
    SquarefreeViolation,
    ConstraintViolation,
    DegenerateCurve,
    EmptyResidueClass,
    MalformedLine,
    NotAMazurGroup,
    Io,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace rmm
