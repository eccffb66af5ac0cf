#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hcvr {

/// Immutable tabular dataset: a row-major feature matrix, a binary target and the feature names.
///
/// Construction validates every invariant (finite values, labels in {0,1}, unique names,
/// consistent sizes); once built the object never changes and can be shared freely.
class Dataset {
public:
    Dataset(std::vector<double> features, std::vector<int> target,
            std::vector<std::string> feature_names);

    std::size_t n_rows() const noexcept { return target_.size(); }
    std::size_t n_cols() const noexcept { return names_.size(); }

    double at(std::size_t row, std::size_t col) const { return features_[row * n_cols() + col]; }
    std::span<const double> row(std::size_t r) const {
        return {features_.data() + r * n_cols(), n_cols()};
    }
    std::vector<double> column(std::size_t c) const;
    std::vector<double> target_as_real() const;

    std::span<const double> features() const noexcept { return features_; }
    std::span<const int> target() const noexcept { return target_; }
    const std::vector<std::string>& feature_names() const noexcept { return names_; }

    std::size_t count_label(int label) const;

    /// Row subset in the given order.
    Dataset take_rows(std::span<const std::size_t> rows) const;
    /// Column subset in the given order; names follow the columns.
    Dataset take_columns(std::span<const std::size_t> cols) const;

    bool operator==(const Dataset&) const = default;

private:
    std::vector<double> features_;
    std::vector<int> target_;
    std::vector<std::string> names_;
};

/// 64-bit FNV-1a over feature bytes, labels and names, rendered as 16 hex digits.
std::string content_hash(const Dataset& d);

/// Label column by zero-based index (negative counts from the end) or by header name.
using LabelColumn = std::variant<long, std::string>;

/// Parses "-1", "3" as indices and anything else as a column name.
LabelColumn parse_label_column(const std::string& text);

Dataset load_csv(const std::filesystem::path& path, const LabelColumn& label, bool has_header);
Dataset parse_csv(std::istream& in, const LabelColumn& label, bool has_header);

struct SplitSpec {
    double test_fraction = 0.2;
    std::uint64_t seed = 42;
    bool stratified = true;
};

struct Split {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
};

/// Number of test rows for n rows: ceil(n * test_fraction), train gets the remainder.
std::size_t test_row_count(std::size_t n_rows, double test_fraction);

Split train_test_split(const Dataset& d, const SplitSpec& spec);

/// Per-column mean and population standard deviation. A zero std marks a constant column.
struct ScalerParams {
    std::vector<double> means;
    std::vector<double> stds;

    static ScalerParams fit(const Dataset& d);

    Dataset transform(const Dataset& d) const;
    Dataset inverse_transform(const Dataset& d) const;
    void transform_row(std::span<const double> in, std::span<double> out) const;

    bool operator==(const ScalerParams&) const = default;
};

void to_json(nlohmann::json& j, const ScalerParams& p);
void from_json(const nlohmann::json& j, ScalerParams& p);

struct Standardized {
    Dataset train;
    std::vector<Dataset> others;
    ScalerParams params;
};

/// Fits on `train` only and applies the same parameters to every dataset in `others`.
Standardized standardize(const Dataset& train, std::span<const Dataset> others);

}  // namespace hcvr
