#ifndef GEOFLOW_ERRORS_HPP
#define GEOFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace geoflow {

enum class ErrorCode {
    DegenerateCurve,
    TooFewPoints,
    NotArclength,
    AllDegenerate,
    BadFrame,
    OutOfDomain,
    InvalidSpec,
    DegenerateSpeed,
    BlowUp,
    TooFewFrames,
    NoRoot,
    InvalidParams,
    DegenerateProfile,
    IoError,
    ConfigError,
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DegenerateCurve: return "DegenerateCurve";
        case ErrorCode::TooFewPoints: return "TooFewPoints";
        case ErrorCode::NotArclength: return "NotArclength";
        case ErrorCode::AllDegenerate: return "AllDegenerate";
        case ErrorCode::BadFrame: return "BadFrame";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::DegenerateSpeed: return "DegenerateSpeed";
        case ErrorCode::BlowUp: return "BlowUp";
        case ErrorCode::TooFewFrames: return "TooFewFrames";
        case ErrorCode::NoRoot: return "NoRoot";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::DegenerateProfile: return "DegenerateProfile";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace geoflow

#endif
