#include "delab/error.hpp"

namespace delab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
        case ErrorCode::SOutOfRange: return "SOutOfRange";
        case ErrorCode::NotInExplicitRegime: return "NotInExplicitRegime";
        case ErrorCode::NonpositiveDilation: return "NonpositiveDilation";
        case ErrorCode::NonpositiveAmplitude: return "NonpositiveAmplitude";
        case ErrorCode::ReductionConditionFailed: return "ReductionConditionFailed";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::SingularPoint: return "SingularPoint";
        case ErrorCode::OutsideDomain: return "OutsideDomain";
        case ErrorCode::TooCloseToSingularSet: return "TooCloseToSingularSet";
        case ErrorCode::WeightNotIntegrable: return "WeightNotIntegrable";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::PointNotOnSphere: return "PointNotOnSphere";
        case ErrorCode::NonFiniteSample: return "NonFiniteSample";
        case ErrorCode::AxisOutOfRange: return "AxisOutOfRange";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::DegenerateTrace: return "DegenerateTrace";
        case ErrorCode::IllConditionedFit: return "IllConditionedFit";
        case ErrorCode::NonpositiveField: return "NonpositiveField";
        case ErrorCode::NonpositiveSamples: return "NonpositiveSamples";
        case ErrorCode::NonpositiveValue: return "NonpositiveValue";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::MalformedFile: return "MalformedFile";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace delab
