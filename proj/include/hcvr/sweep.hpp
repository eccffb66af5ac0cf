#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcvr/classifiers.hpp"
#include "hcvr/dataset.hpp"

namespace hcvr {

struct SweepOptions {
    double theta_min = 0.0;
    double theta_max = 0.5;
    double step = 0.02;
    /// Second pass over [best - step, best + step] at step / 10.
    bool refine = false;
    double validation_fraction = 0.2;
    std::uint64_t seed = 0;

    bool operator==(const SweepOptions&) const = default;
};

struct SweepRecord {
    double theta = 0.0;
    std::size_t n_selected = 0;
    double train_accuracy = 0.0;
    double validation_accuracy = 0.0;

    bool operator==(const SweepRecord&) const = default;
};

struct SweepTrace {
    std::string classifier_id;
    std::vector<SweepRecord> records;  // coarse pass, strictly increasing theta
    std::vector<SweepRecord> refined;  // optional fine pass
    double best_theta = 0.0;
    std::size_t best_n_selected = 0;
    double best_validation_accuracy = 0.0;

    bool operator==(const SweepTrace&) const = default;
};

/// theta_min, theta_min + step, ... up to theta_max (inclusive up to 1e-9), each rounded to
/// 1e-10 so that grid points print cleanly.
std::vector<double> threshold_grid(double theta_min, double theta_max, double step);

/// Highest validation accuracy; ties prefer fewer selected features, then the smaller theta.
std::size_t best_record(std::span<const SweepRecord> records);

/// Threshold sweep with backward elimination restarted from the full feature set at every
/// theta. `train` is split into an inner fit/validation partition (stratified,
/// options.validation_fraction, options.seed). For each theta the correlation profile of the
/// fit rows drives the vote, the classifier is trained on the fit rows' selected columns and
/// scored on both partitions. An empty selection is scored as the fit rows' majority label.
SweepTrace sweep(const Dataset& train, const ClassifierSpec& classifier, const SweepOptions& options);

/// `theta,n_selected,train_acc,val_acc` with fixed six-decimal formatting.
std::string to_csv(const SweepTrace& trace);

void to_json(nlohmann::json& j, const SweepRecord& r);
void to_json(nlohmann::json& j, const SweepTrace& t);
void to_json(nlohmann::json& j, const SweepOptions& o);
void from_json(const nlohmann::json& j, SweepOptions& o);

}  // namespace hcvr
