#ifndef DP3_ERRORS_HPP
#define DP3_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dp3 {

enum class Errc {
    DivisionByZero,
    PoleAtExpansionPoint,
    MissingBinding,
    InvalidBasis,
    UnsupportedRelation,
    UnsupportedRHS,
    MissingAnchor,
    AlgorithmInvariantViolation,
    DeterminantVanished,
    OracleInconsistency,
    InsufficientTruncation,
    InvalidIndex,
    IncompatibleMap,
    EvaluationFailure,
    StiffnessFailure,
    SchemaVersionError,
    RingMismatch,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::PoleAtExpansionPoint: return "PoleAtExpansionPoint";
        case Errc::MissingBinding: return "MissingBinding";
        case Errc::InvalidBasis: return "InvalidBasis";
        case Errc::UnsupportedRelation: return "UnsupportedRelation";
        case Errc::UnsupportedRHS: return "UnsupportedRHS";
        case Errc::MissingAnchor: return "MissingAnchor";
        case Errc::AlgorithmInvariantViolation: return "AlgorithmInvariantViolation";
        case Errc::DeterminantVanished: return "DeterminantVanished";
        case Errc::OracleInconsistency: return "OracleInconsistency";
        case Errc::InsufficientTruncation: return "InsufficientTruncation";
        case Errc::InvalidIndex: return "InvalidIndex";
        case Errc::IncompatibleMap: return "IncompatibleMap";
        case Errc::EvaluationFailure: return "EvaluationFailure";
        case Errc::StiffnessFailure: return "StiffnessFailure";
        case Errc::SchemaVersionError: return "SchemaVersionError";
        case Errc::RingMismatch: return "RingMismatch";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace dp3

#endif
