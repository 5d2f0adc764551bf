#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ebr {

enum class ErrorCode {
    DimensionMismatch,
    DimensionOverflow,
    NonFinite,
    ZeroTrace,
    NotTwoQubit,
    InvalidParams,
    NoThreshold,
    SingularPrescription,
    StageMismatch,
    ZeroProbability,
    RankDeficient,
    Config,
    Io,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ebr
