#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "hcvr/dataset.hpp"

namespace hcvr {

/// Correlation threshold in [0, 1]. Construction rejects anything else with InvalidThreshold.
class Threshold {
public:
    explicit Threshold(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

enum class CorrelationClass { High, Low };

/// High iff |rho| >= theta.
CorrelationClass classify(double rho, Threshold theta);

/// Pearson correlation clamped to [-1, 1]. A constant input yields 0.
double pearson(std::span<const double> x, std::span<const double> y);

/// Feature-feature (p2p) and feature-target (p2t) Pearson correlations.
/// The target enters as real-valued {0,1}, i.e. point-biserial correlation.
struct CorrelationProfile {
    std::size_t n = 0;
    std::vector<double> p2p;  // row-major n x n
    std::vector<double> p2t;

    double pair(std::size_t i, std::size_t j) const { return p2p[i * n + j]; }
    double target(std::size_t i) const { return p2t[i]; }

    bool operator==(const CorrelationProfile&) const = default;
};

/// Builds from column z-scores: constant columns correlate 0 with everything, themselves
/// included; every other diagonal entry is exactly 1 and the lower triangle mirrors the upper.
CorrelationProfile build_profile(const Dataset& d);

/// Builds a profile from raw values, validating symmetry, bounds and sizes.
CorrelationProfile make_profile(std::vector<double> p2p, std::vector<double> p2t);

void to_json(nlohmann::json& j, const CorrelationProfile& p);
void from_json(const nlohmann::json& j, CorrelationProfile& p);

/// On-disk profile cache: one JSON file per (dataset content hash, split seed).
class ProfileCache {
public:
    explicit ProfileCache(std::filesystem::path dir);

    /// Directory from $HCVR_CACHE_DIR, if set and non-empty.
    static std::optional<ProfileCache> from_env();

    std::filesystem::path entry_path(const std::string& dataset_hash, std::uint64_t seed) const;
    CorrelationProfile load_or_build(const Dataset& d, std::uint64_t seed) const;

private:
    std::filesystem::path dir_;
};

}  // namespace hcvr
