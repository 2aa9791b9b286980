#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mupoly {

enum class ErrorKind {
    UnpairedComplexRoot,
    IndexOutOfRange,
    BadIndex,
    DegenerateSplit,
    NegativePadding,
    NonpositiveEvaluation,
    NotARoot,
    DegenerateRate,
    InsufficientTrace,
    ShiftMakesRootNonpositive,
    OracleNoConvergence,
    NonpositiveStart,
    NoSignChange,
    InvalidInput,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::UnpairedComplexRoot: return "UnpairedComplexRoot";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::BadIndex: return "BadIndex";
        case ErrorKind::DegenerateSplit: return "DegenerateSplit";
        case ErrorKind::NegativePadding: return "NegativePadding";
        case ErrorKind::NonpositiveEvaluation: return "NonpositiveEvaluation";
        case ErrorKind::NotARoot: return "NotARoot";
        case ErrorKind::DegenerateRate: return "DegenerateRate";
        case ErrorKind::InsufficientTrace: return "InsufficientTrace";
        case ErrorKind::ShiftMakesRootNonpositive: return "ShiftMakesRootNonpositive";
        case ErrorKind::OracleNoConvergence: return "OracleNoConvergence";
        case ErrorKind::NonpositiveStart: return "NonpositiveStart";
        case ErrorKind::NoSignChange: return "NoSignChange";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

/// Exception carrying a machine-checkable error kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mupoly
