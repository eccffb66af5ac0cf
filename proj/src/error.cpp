#include "hcvr/error.hpp"

namespace hcvr {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::LabelError: return "LabelError";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::InvalidFraction: return "InvalidFraction";
        case ErrorCode::StratifyError: return "StratifyError";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::InvalidThreshold: return "InvalidThreshold";
        case ErrorCode::TooFewFeatures: return "TooFewFeatures";
        case ErrorCode::InvalidRange: return "InvalidRange";
        case ErrorCode::SingleClass: return "SingleClass";
        case ErrorCode::InvalidK: return "InvalidK";
        case ErrorCode::EmptySubset: return "EmptySubset";
        case ErrorCode::SubsetMismatch: return "SubsetMismatch";
        case ErrorCode::InvalidHyperparameter: return "InvalidHyperparameter";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_validation_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidFraction:
        case ErrorCode::InvalidThreshold:
        case ErrorCode::InvalidRange:
        case ErrorCode::InvalidK:
        case ErrorCode::InvalidHyperparameter:
        case ErrorCode::InvalidConfig:
        case ErrorCode::EmptySubset:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

ParseError::ParseError(std::size_t row, std::size_t col, const std::string& detail)
    : Error(ErrorCode::ParseError,
            "row " + std::to_string(row) + ", column " + std::to_string(col) + ": " + detail),
      row_(row),
      col_(col) {}

}  // namespace hcvr
