#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsi {

enum class ErrorCode {
    NonIncreasingOffsets,
    OffsetOutOfRange,
    BadBase,
    BadIndex,
    RangeOverflow,
    NonPositivePoint,
    NegativeKappa,
    InvalidModel,
    ModelUnstable,
    ToleranceUnreachable,
    GridTooCoarse,
    BadInterval,
    RangeTooSmall,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported as a dsi::Error carrying a code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dsi
