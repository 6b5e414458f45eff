#include "dsi/error.hpp"

namespace dsi {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonIncreasingOffsets: return "NonIncreasingOffsets";
        case ErrorCode::OffsetOutOfRange: return "OffsetOutOfRange";
        case ErrorCode::BadBase: return "BadBase";
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::RangeOverflow: return "RangeOverflow";
        case ErrorCode::NonPositivePoint: return "NonPositivePoint";
        case ErrorCode::NegativeKappa: return "NegativeKappa";
        case ErrorCode::InvalidModel: return "InvalidModel";
        case ErrorCode::ModelUnstable: return "ModelUnstable";
        case ErrorCode::ToleranceUnreachable: return "ToleranceUnreachable";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::BadInterval: return "BadInterval";
        case ErrorCode::RangeTooSmall: return "RangeTooSmall";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace dsi
