#include "hcvr/run_config.hpp"

#include <fstream>

#include "hcvr/error.hpp"

namespace hcvr {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SplitSpec RunConfig::split_spec() const { return {test_fraction, seed, stratified}; }

SweepOptions RunConfig::sweep_options() const {
    SweepOptions o;
    o.theta_min = theta_min;
    o.theta_max = theta_max;
    o.step = step;
    o.refine = refine;
    o.seed = derive_seed(seed, 1);
    return o;
}

std::vector<ClassifierSpec> RunConfig::classifier_specs() const {
    std::vector<ClassifierSpec> specs;
    for (const auto& name : classifiers) {
        specs.push_back(default_spec(parse_classifier_kind(name), derive_seed(seed, 2)));
    }
    return specs;
}

std::vector<MethodConfig> RunConfig::method_configs() const {
    std::vector<MethodConfig> out;
    for (const auto& name : methods) {
        MethodConfig m;
        m.kind = parse_method_kind(name);
        m.k = k;
        m.n_bins = n_bins;
        m.sweep = sweep_options();
        out.push_back(m);
    }
    return out;
}

void RunConfig::validate() const {
    if (data_path.empty()) throw Error(ErrorCode::InvalidConfig, "--data is required");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw Error(ErrorCode::InvalidFraction, "test fraction must lie in (0, 1)");
    }
    if (theta && !(*theta >= 0.0 && *theta <= 1.0)) {
        throw Error(ErrorCode::InvalidThreshold, "theta " + std::to_string(*theta) +
                                                     " outside [0, 1]");
    }
    threshold_grid(theta_min, theta_max, step);
    if (classifiers.empty()) throw Error(ErrorCode::InvalidConfig, "no classifier given");
    if (methods.empty()) throw Error(ErrorCode::InvalidConfig, "no selection method given");
    classifier_specs();
    method_configs();
    if (k < 1) throw Error(ErrorCode::InvalidK, "k must be at least 1");
    if (n_bins < 2) throw Error(ErrorCode::InvalidConfig, "need at least 2 bins");
    if (format != "csv" && format != "json") {
        throw Error(ErrorCode::InvalidConfig, "format must be csv or json");
    }
}

void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"data_path", c.data_path},
                       {"label_column", c.label_column},
                       {"has_header", c.has_header},
                       {"test_fraction", c.test_fraction},
                       {"stratified", c.stratified},
                       {"theta_min", c.theta_min},
                       {"theta_max", c.theta_max},
                       {"step", c.step},
                       {"refine", c.refine},
                       {"classifiers", c.classifiers},
                       {"methods", c.methods},
                       {"k", c.k},
                       {"n_bins", c.n_bins},
                       {"seed", c.seed},
                       {"out_dir", c.out_dir},
                       {"format", c.format}};
    j["theta"] = c.theta ? nlohmann::json(*c.theta) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, RunConfig& c) {
    const RunConfig d;
    c.data_path = j.value("data_path", d.data_path);
    c.label_column = j.value("label_column", d.label_column);
    c.has_header = j.value("has_header", d.has_header);
    c.test_fraction = j.value("test_fraction", d.test_fraction);
    c.stratified = j.value("stratified", d.stratified);
    c.theta_min = j.value("theta_min", d.theta_min);
    c.theta_max = j.value("theta_max", d.theta_max);
    c.step = j.value("step", d.step);
    c.refine = j.value("refine", d.refine);
    c.classifiers = j.value("classifiers", d.classifiers);
    c.methods = j.value("methods", d.methods);
    c.k = j.value("k", d.k);
    c.n_bins = j.value("n_bins", d.n_bins);
    c.seed = j.value("seed", d.seed);
    c.out_dir = j.value("out_dir", d.out_dir);
    c.format = j.value("format", d.format);
    if (j.contains("theta") && !j.at("theta").is_null()) {
        c.theta = j.at("theta").get<double>();
    } else {
        c.theta.reset();
    }
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open config '" + path.string() + "'");
    try {
        return nlohmann::json::parse(in).get<RunConfig>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, "bad config '" + path.string() + "': " + e.what());
    }
}

}  // namespace hcvr
