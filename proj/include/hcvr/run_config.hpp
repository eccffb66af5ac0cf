#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcvr/classifiers.hpp"
#include "hcvr/compare.hpp"
#include "hcvr/dataset.hpp"
#include "hcvr/sweep.hpp"

namespace hcvr {

/// Everything a CLI run depends on. A saved config re-run on the same data reproduces
/// every output file byte for byte.
struct RunConfig {
    std::string data_path;
    std::string label_column = "-1";
    bool has_header = false;
    double test_fraction = 0.2;
    bool stratified = true;
    std::optional<double> theta;
    double theta_min = 0.0;
    double theta_max = 0.5;
    double step = 0.02;
    bool refine = false;
    std::vector<std::string> classifiers{"decision_tree"};
    std::vector<std::string> methods{"hcvr", "anova_f", "mi", "mrmr"};
    std::size_t k = 10;
    std::size_t n_bins = 10;
    std::uint64_t seed = 42;
    std::string out_dir = "hcvr-out";
    std::string format = "csv";

    bool operator==(const RunConfig&) const = default;

    /// Split seed is the run seed itself; sweep and classifier seeds are derived from it.
    SplitSpec split_spec() const;
    SweepOptions sweep_options() const;
    std::vector<ClassifierSpec> classifier_specs() const;
    std::vector<MethodConfig> method_configs() const;

    /// Throws InvalidConfig / InvalidRange / InvalidThreshold / InvalidK on bad values.
    void validate() const;
};

/// splitmix64 of seed + stream; used to fan one run seed out to independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace hcvr
