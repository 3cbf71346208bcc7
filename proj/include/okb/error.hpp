#pragma once

#include <stdexcept>
#include <string>

namespace okb {

enum class ErrorKind {
    DimensionMismatch,
    UnknownCurve,
    UnknownModel,
    UnknownLabel,
    InvalidInput,
    ParseError,
    InfeasibleStart,
    NotInCone,
    NotPseudoeffective,
    NotBig,
    NotNef,
    NotEffectiveInput,
    NotSupported,
    InvalidFixedPart,
    CurveInBMinus,
    AnnotationRequired,
    RankLimitExceeded,
    ModelInconsistent,
    OracleAmbiguous,
    NonNonnegativeSolution,
};

inline const char* kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnknownCurve: return "UnknownCurve";
    case ErrorKind::UnknownModel: return "UnknownModel";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InfeasibleStart: return "InfeasibleStart";
    case ErrorKind::NotInCone: return "NotInCone";
    case ErrorKind::NotPseudoeffective: return "NotPseudoeffective";
    case ErrorKind::NotBig: return "NotBig";
    case ErrorKind::NotNef: return "NotNef";
    case ErrorKind::NotEffectiveInput: return "NotEffectiveInput";
    case ErrorKind::NotSupported: return "NotSupported";
    case ErrorKind::InvalidFixedPart: return "InvalidFixedPart";
    case ErrorKind::CurveInBMinus: return "CurveInBMinus";
    case ErrorKind::AnnotationRequired: return "AnnotationRequired";
    case ErrorKind::RankLimitExceeded: return "RankLimitExceeded";
    case ErrorKind::ModelInconsistent: return "ModelInconsistent";
    case ErrorKind::OracleAmbiguous: return "OracleAmbiguous";
    case ErrorKind::NonNonnegativeSolution: return "NonNonnegativeSolution";
    }
    return "Unknown";
}

/// Every failure raised by the library. `kind()` is stable and drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace okb
