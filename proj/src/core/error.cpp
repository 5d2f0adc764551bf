#include "ebr/error.hpp"

namespace ebr {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::DimensionOverflow:
            return "DimensionOverflow";
        case ErrorCode::NonFinite:
            return "NonFinite";
        case ErrorCode::ZeroTrace:
            return "ZeroTrace";
        case ErrorCode::NotTwoQubit:
            return "NotTwoQubit";
        case ErrorCode::InvalidParams:
            return "InvalidParams";
        case ErrorCode::NoThreshold:
            return "NoThreshold";
        case ErrorCode::SingularPrescription:
            return "SingularPrescription";
        case ErrorCode::StageMismatch:
            return "StageMismatch";
        case ErrorCode::ZeroProbability:
            return "ZeroProbability";
        case ErrorCode::RankDeficient:
            return "RankDeficient";
        case ErrorCode::Config:
            return "Config";
        case ErrorCode::Io:
            return "Io";
    }
    return "Unknown";
}

}  // namespace ebr
