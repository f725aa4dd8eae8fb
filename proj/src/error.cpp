#include "rmm/error.hpp"

namespace rmm {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::SingularCurve: return "SingularCurve";
        case ErrorCode::NonIntegralResult: return "NonIntegralResult";
        case ErrorCode::ZeroScale: return "ZeroScale";
        case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
        case ErrorCode::NotASignature: return "NotASignature";
        case ErrorCode::NotAdmissible: return "NotAdmissible";
        case ErrorCode::FactorizationTooHard: return "FactorizationTooHard";
        case ErrorCode::NotMinimal: return "NotMinimal";
        case ErrorCode::UnsupportedPrime: return "UnsupportedPrime";
        case ErrorCode::UnsupportedTorsion: return "UnsupportedTorsion";
        case ErrorCode::GcdViolation: return "GcdViolation";
        case ErrorCode::SignViolation: return "SignViolation";
        case ErrorCode::ParityViolation: return "ParityViolation";
        case ErrorCode::SquarefreeViolation: return "SquarefreeViolation";
        case ErrorCode::ConstraintViolation: return "ConstraintViolation";
        case ErrorCode::DegenerateCurve: return "DegenerateCurve";
        case ErrorCode::EmptyResidueClass: return "EmptyResidueClass";
        case ErrorCode::MalformedLine: return "MalformedLine";
        case ErrorCode::NotAMazurGroup: return "NotAMazurGroup";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace rmm
