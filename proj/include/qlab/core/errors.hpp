#pragma once

#include <stdexcept>
#include <string>

namespace qlab {

enum class ErrorCode {
    MissingFile,
    MalformedRow,
    DuplicateDate,
    InvalidRange,
    WindowTooLarge,
    LengthMismatch,
    TooShort,
    ZeroClose,
    ZeroVariance,
    InsufficientOverlap,
    SingularRegression,
    NonConvergence,
    InsufficientHistory,
    AlignmentError,
    EmptyUniverse,
    SingleClassTraining,
    EmptyGrid,
    TooFewRows,
    EmptyTestSet,
    NonPositiveSpread,
    Underdetermined,
    Overdetermined,
    DomainError,
    UsageError,
};

const char* error_code_name(ErrorCode code);

/// Single exception type for the toolkit; `code()` identifies the failure
/// so callers and tests can branch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace qlab
