#include "hcvr/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "hcvr/error.hpp"

namespace hcvr {

Dataset::Dataset(std::vector<double> features, std::vector<int> target,
                 std::vector<std::string> feature_names)
    : features_(std::move(features)), target_(std::move(target)), names_(std::move(feature_names)) {
    if (target_.empty()) throw Error(ErrorCode::EmptyDataset, "dataset has no rows");
    if (features_.size() != target_.size() * names_.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "feature matrix has " + std::to_string(features_.size()) + " entries, expected " +
                        std::to_string(target_.size()) + " x " + std::to_string(names_.size()));
    }
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (!std::isfinite(features_[i])) {
            throw Error(ErrorCode::ParseError, "non-finite value at row " +
                                                   std::to_string(i / names_.size()) + ", column " +
                                                   std::to_string(i % names_.size()));
        }
    }
    for (std::size_t r = 0; r < target_.size(); ++r) {
        if (target_[r] != 0 && target_[r] != 1) {
            throw Error(ErrorCode::LabelError,
                        "label " + std::to_string(target_[r]) + " at row " + std::to_string(r) +
                            " is not 0 or 1");
        }
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : names_) {
        if (!seen.insert(name).second) {
            throw Error(ErrorCode::ParseError, "duplicate feature name '" + name + "'");
        }
    }
}

std::vector<double> Dataset::column(std::size_t c) const {
    std::vector<double> out(n_rows());
    for (std::size_t r = 0; r < n_rows(); ++r) out[r] = at(r, c);
    return out;
}

std::vector<double> Dataset::target_as_real() const {
    return {target_.begin(), target_.end()};
}

std::size_t Dataset::count_label(int label) const {
    return static_cast<std::size_t>(std::count(target_.begin(), target_.end(), label));
}

Dataset Dataset::take_rows(std::span<const std::size_t> rows) const {
    std::vector<double> features;
    features.reserve(rows.size() * n_cols());
    std::vector<int> target;
    target.reserve(rows.size());
    for (std::size_t r : rows) {
        auto src = row(r);
        features.insert(features.end(), src.begin(), src.end());
        target.push_back(target_[r]);
    }
    return {std::move(features), std::move(target), names_};
}

Dataset Dataset::take_columns(std::span<const std::size_t> cols) const {
    std::vector<double> features;
    features.reserve(n_rows() * cols.size());
    for (std::size_t r = 0; r < n_rows(); ++r) {
        for (std::size_t c : cols) features.push_back(at(r, c));
    }
    std::vector<std::string> names;
    names.reserve(cols.size());
    for (std::size_t c : cols) names.push_back(names_.at(c));
    return {std::move(features), target_, std::move(names)};
}

std::string content_hash(const Dataset& d) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ULL;
        }
    };
    const std::uint64_t dims[2] = {d.n_rows(), d.n_cols()};
    mix(dims, sizeof dims);
    for (double v : d.features()) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof bits);
        mix(&bits, sizeof bits);
    }
    for (int t : d.target()) {
        const unsigned char b = static_cast<unsigned char>(t);
        mix(&b, 1);
    }
    for (const auto& name : d.feature_names()) {
        mix(name.data(), name.size());
        const char sep = '\x1f';
        mix(&sep, 1);
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

// ---------------------------------------------------------------------------------------------
// CSV

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    bool quoted = false;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i < line.size() && line[i] == '"') quoted = !quoted;
        if (i == line.size() || (line[i] == ',' && !quoted)) {
            auto f = trim(line.substr(start, i - start));
            if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
            fields.push_back(f);
            start = i + 1;
        }
    }
    return fields;
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::size_t resolve_label(const LabelColumn& label, std::size_t width,
                          const std::vector<std::string>& header) {
    if (const long* idx = std::get_if<long>(&label)) {
        const long w = static_cast<long>(width);
        const long resolved = *idx < 0 ? w + *idx : *idx;
        if (resolved < 0 || resolved >= w) {
            throw Error(ErrorCode::LabelError, "label column index " + std::to_string(*idx) +
                                                   " out of range for " + std::to_string(width) +
                                                   " columns");
        }
        return static_cast<std::size_t>(resolved);
    }
    const auto& name = std::get<std::string>(label);
    if (header.empty()) {
        throw Error(ErrorCode::LabelError,
                    "label column '" + name + "' given by name but the file has no header");
    }
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorCode::LabelError, "no column named '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

LabelColumn parse_label_column(const std::string& text) {
    long value = 0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (!text.empty() && ec == std::errc() && ptr == end) return value;
    return text;
}

Dataset parse_csv(std::istream& in, const LabelColumn& label, bool has_header) {
    std::vector<std::string> header;
    std::vector<double> features;
    std::vector<int> target;
    std::size_t width = 0;
    std::size_t label_col = 0;
    std::size_t row = 0;
    std::string line;

    for (; std::getline(in, line); ++row) {
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (width == 0) {
            width = fields.size();
            if (width < 2) throw ParseError(row, 0, "need at least one feature and a label column");
            if (has_header) {
                for (auto f : fields) header.emplace_back(f);
            }
            label_col = resolve_label(label, width, header);
            if (has_header) continue;
        }
        if (fields.size() != width) {
            throw ParseError(row, std::min(fields.size(), width),
                             "expected " + std::to_string(width) + " fields, found " +
                                 std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < width; ++c) {
            double v = 0.0;
            if (!parse_double(fields[c], v)) {
                throw ParseError(row, c, "non-numeric value '" + std::string(fields[c]) + "'");
            }
            if (c == label_col) {
                if (v != 0.0 && v != 1.0) {
                    throw Error(ErrorCode::LabelError, "label '" + std::string(fields[c]) +
                                                           "' at row " + std::to_string(row) +
                                                           " is not 0 or 1");
                }
                target.push_back(static_cast<int>(v));
            } else {
                features.push_back(v);
            }
        }
    }
    if (target.empty()) throw Error(ErrorCode::EmptyDataset, "no data rows");

    std::vector<std::string> names;
    for (std::size_t c = 0, f = 0; c < width; ++c) {
        if (c == label_col) continue;
        names.push_back(has_header ? header[c] : "f" + std::to_string(f));
        ++f;
    }
    return {std::move(features), std::move(target), std::move(names)};
}

Dataset load_csv(const std::filesystem::path& path, const LabelColumn& label, bool has_header) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
    return parse_csv(in, label, has_header);
}

// ---------------------------------------------------------------------------------------------
// Splitting

std::size_t test_row_count(std::size_t n_rows, double test_fraction) {
    // The small slack keeps exact products such as 10 * 0.2 from rounding up.
    return static_cast<std::size_t>(std::ceil(static_cast<double>(n_rows) * test_fraction - 1e-9));
}

Split train_test_split(const Dataset& d, const SplitSpec& spec) {
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidFraction, "test fraction must lie in (0, 1)");
    }
    const std::size_t n = d.n_rows();
    if (n < 2) throw Error(ErrorCode::TooFewSamples, "need at least 2 rows to split");
    const std::size_t n_test = test_row_count(n, spec.test_fraction);
    if (n_test == 0 || n_test >= n) {
        throw Error(ErrorCode::InvalidFraction,
                    "test fraction leaves an empty partition for " + std::to_string(n) + " rows");
    }

    std::mt19937_64 rng(spec.seed);
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;

    if (spec.stratified) {
        std::array<std::vector<std::size_t>, 2> by_class;
        for (std::size_t r = 0; r < n; ++r) by_class[d.target()[r]].push_back(r);
        for (int c = 0; c < 2; ++c) {
            if (by_class[c].size() < 2) {
                throw Error(ErrorCode::StratifyError, "class " + std::to_string(c) + " has " +
                                                          std::to_string(by_class[c].size()) +
                                                          " instance(s); stratification needs 2");
            }
        }
        // Largest-remainder allocation of the test rows across the two classes.
        std::array<std::size_t, 2> take{};
        std::array<double, 2> frac{};
        std::size_t assigned = 0;
        for (int c = 0; c < 2; ++c) {
            const double share = static_cast<double>(by_class[c].size()) *
                                 static_cast<double>(n_test) / static_cast<double>(n);
            take[c] = static_cast<std::size_t>(std::floor(share));
            frac[c] = share - static_cast<double>(take[c]);
            assigned += take[c];
        }
        if (assigned < n_test) take[frac[1] > frac[0] ? 1 : 0] += n_test - assigned;

        for (int c = 0; c < 2; ++c) {
            auto& rows = by_class[c];
            std::shuffle(rows.begin(), rows.end(), rng);
            test_rows.insert(test_rows.end(), rows.begin(), rows.begin() + take[c]);
            train_rows.insert(train_rows.end(), rows.begin() + take[c], rows.end());
        }
    } else {
        std::vector<std::size_t> rows(n);
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        std::shuffle(rows.begin(), rows.end(), rng);
        test_rows.assign(rows.begin(), rows.begin() + n_test);
        train_rows.assign(rows.begin() + n_test, rows.end());
    }
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());
    return {d.take_rows(train_rows), d.take_rows(test_rows), std::move(train_rows),
            std::move(test_rows)};
}

// ---------------------------------------------------------------------------------------------
// Standardization

ScalerParams ScalerParams::fit(const Dataset& d) {
    const std::size_t n = d.n_rows();
    const std::size_t m = d.n_cols();
    ScalerParams p{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
    for (std::size_t c = 0; c < m; ++c) {
        double sum = 0.0;
        bool constant = true;
        const double first = d.at(0, c);
        for (std::size_t r = 0; r < n; ++r) {
            sum += d.at(r, c);
            constant = constant && d.at(r, c) == first;
        }
        if (constant) {
            p.means[c] = first;
            continue;
        }
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double dev = d.at(r, c) - mean;
            ss += dev * dev;
        }
        p.means[c] = mean;
        p.stds[c] = std::sqrt(ss / static_cast<double>(n));
    }
    return p;
}

void ScalerParams::transform_row(std::span<const double> in, std::span<double> out) const {
    for (std::size_t c = 0; c < in.size(); ++c) {
        out[c] = stds[c] == 0.0 ? 0.0 : (in[c] - means[c]) / stds[c];
    }
}

Dataset ScalerParams::transform(const Dataset& d) const {
    if (d.n_cols() != means.size()) {
        throw Error(ErrorCode::LengthMismatch, "scaler fitted on " + std::to_string(means.size()) +
                                                   " columns, dataset has " +
                                                   std::to_string(d.n_cols()));
    }
    std::vector<double> out(d.features().size());
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        transform_row(d.row(r), std::span<double>(out).subspan(r * d.n_cols(), d.n_cols()));
    }
    return {std::move(out), {d.target().begin(), d.target().end()}, d.feature_names()};
}

Dataset ScalerParams::inverse_transform(const Dataset& d) const {
    if (d.n_cols() != means.size()) {
        throw Error(ErrorCode::LengthMismatch, "scaler column count mismatch");
    }
    std::vector<double> out(d.features().size());
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        for (std::size_t c = 0; c < d.n_cols(); ++c) {
            out[r * d.n_cols() + c] = stds[c] == 0.0 ? means[c] : d.at(r, c) * stds[c] + means[c];
        }
    }
    return {std::move(out), {d.target().begin(), d.target().end()}, d.feature_names()};
}

void to_json(nlohmann::json& j, const ScalerParams& p) {
    j = nlohmann::json{{"means", p.means}, {"stds", p.stds}};
}

void from_json(const nlohmann::json& j, ScalerParams& p) {
    j.at("means").get_to(p.means);
    j.at("stds").get_to(p.stds);
    if (p.means.size() != p.stds.size()) {
        throw Error(ErrorCode::LengthMismatch, "scaler means/stds length differ");
    }
}

Standardized standardize(const Dataset& train, std::span<const Dataset> others) {
    ScalerParams params = ScalerParams::fit(train);
    std::vector<Dataset> transformed;
    transformed.reserve(others.size());
    for (const auto& d : others) transformed.push_back(params.transform(d));
    return {params.transform(train), std::move(transformed), std::move(params)};
}

}  // namespace hcvr
