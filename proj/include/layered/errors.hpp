#pragma once

#include <stdexcept>
#include <string>

namespace layered {

enum class Errc {
    NotPerfectMatching,
    Disconnected,
    OddVertexCount,
    GenusBelowTwo,
    UnknownCurve,
    MoveNotApplicable,
    GenusMismatch,
    InvalidPath,
    StageOutOfRange,
    NotValidated,
    MalformedTree,
    AttachmentTargetNotBoundaryLoop,
    NotSingleBody,
    BaseMismatch,
    NotAMatching,
    EndpointMismatch,
    MatchingMismatch,
    SharedLoopViolation,
    ValidationFailure,
    BadSymbol,
    SchemaViolation,
    IoFailure,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotPerfectMatching: return "NotPerfectMatching";
        case Errc::Disconnected: return "Disconnected";
        case Errc::OddVertexCount: return "OddVertexCount";
        case Errc::GenusBelowTwo: return "GenusBelowTwo";
        case Errc::UnknownCurve: return "UnknownCurve";
        case Errc::MoveNotApplicable: return "MoveNotApplicable";
        case Errc::GenusMismatch: return "GenusMismatch";
        case Errc::InvalidPath: return "InvalidPath";
        case Errc::StageOutOfRange: return "StageOutOfRange";
        case Errc::NotValidated: return "NotValidated";
        case Errc::MalformedTree: return "MalformedTree";
        case Errc::AttachmentTargetNotBoundaryLoop: return "AttachmentTargetNotBoundaryLoop";
        case Errc::NotSingleBody: return "NotSingleBody";
        case Errc::BaseMismatch: return "BaseMismatch";
        case Errc::NotAMatching: return "NotAMatching";
        case Errc::EndpointMismatch: return "EndpointMismatch";
        case Errc::MatchingMismatch: return "MatchingMismatch";
        case Errc::SharedLoopViolation: return "SharedLoopViolation";
        case Errc::ValidationFailure: return "ValidationFailure";
        case Errc::BadSymbol: return "BadSymbol";
        case Errc::SchemaViolation: return "SchemaViolation";
        case Errc::IoFailure: return "IoFailure";
    }
    return "Unknown";
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

}  // namespace layered
