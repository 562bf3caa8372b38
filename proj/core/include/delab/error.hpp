#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace delab {

enum class ErrorCode {
    DimensionTooSmall,
    AlphaOutOfRange,
    SOutOfRange,
    NotInExplicitRegime,
    NonpositiveDilation,
    NonpositiveAmplitude,
    ReductionConditionFailed,
    DomainMismatch,
    SingularPoint,
    OutsideDomain,
    TooCloseToSingularSet,
    WeightNotIntegrable,
    NoConvergence,
    PointNotOnSphere,
    NonFiniteSample,
    AxisOutOfRange,
    ZeroDenominator,
    NotConverged,
    DegenerateTrace,
    IllConditionedFit,
    NonpositiveField,
    NonpositiveSamples,
    NonpositiveValue,
    Unsupported,
    MalformedFile,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps them onto exit status 2 and prints the code name.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace delab
