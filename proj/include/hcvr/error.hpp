#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hcvr {

enum class ErrorCode {
    FileNotFound,
    ParseError,
    LabelError,
    EmptyDataset,
    InvalidFraction,
    StratifyError,
    LengthMismatch,
    TooFewSamples,
    InvalidThreshold,
    TooFewFeatures,
    InvalidRange,
    SingleClass,
    InvalidK,
    EmptySubset,
    SubsetMismatch,
    InvalidHyperparameter,
    InvalidConfig,
    IoError,
};

std::string_view to_string(ErrorCode code);

// Errors that stem from bad user-supplied parameters rather than bad data or IO.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Non-numeric or malformed CSV cell. Row and column are zero-based positions in the file
/// (the header, when present, is row 0).
class ParseError : public Error {
public:
    ParseError(std::size_t row, std::size_t col, const std::string& detail);

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

}  // namespace hcvr
