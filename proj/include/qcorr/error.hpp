#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcorr {

enum class ErrorKind {
    NotHermitian,
    NotUnitary,
    NotTracePreserving,
    InvalidState,
    ConvergenceFailure,
    EmptySubset,
    InvalidSubset,
    InvalidBipartition,
    IndexOutOfRange,
    ZeroVector,
    DimensionMismatch,
    TooLarge,
    BadArity,
    OutOfRange,
    ParseError,
    RangeError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::NotTracePreserving: return "NotTracePreserving";
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorKind::EmptySubset: return "EmptySubset";
        case ErrorKind::InvalidSubset: return "InvalidSubset";
        case ErrorKind::InvalidBipartition: return "InvalidBipartition";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::BadArity: return "BadArity";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::RangeError: return "RangeError";
    }
    return "Unknown";
}

/// Single exception type for the library; `kind()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Process exit code for an error kind: 2 input/parse, 3 resource guard,
/// 4 numerical failure.
constexpr int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::TooLarge:
        case ErrorKind::RangeError:
            return 3;
        case ErrorKind::ConvergenceFailure:
        case ErrorKind::NotHermitian:
        case ErrorKind::NotUnitary:
        case ErrorKind::NotTracePreserving:
            return 4;
        default:
            return 2;
    }
}

}  // namespace qcorr
