#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seucal {

enum class ErrorCode {
    NonPositiveStake,
    InvalidBelief,
    InvalidWealthSet,
    InvalidScenario,
    ParseError,
    IoError,
    InvalidK,
    InvalidIota,
    InvalidUtility,
    DegenerateUtility,
    RegionMismatch,
    SearchExhausted,
    IntervalTooWide,
    PreconditionViolated,
    PartitionMismatch,
    NumericFailure,
};

/// Stable lowercase identifier used in machine-readable error lines.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace seucal
