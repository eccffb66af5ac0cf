#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcvr/classifiers.hpp"
#include "hcvr/dataset.hpp"
#include "hcvr/sweep.hpp"

namespace hcvr {

enum class MethodKind { HCVR, AnovaF, MutualInfo, MRMR };

/// One column of the comparison grid.
struct MethodConfig {
    MethodKind kind = MethodKind::HCVR;
    std::size_t k = 10;                 // filters only
    std::size_t n_bins = 10;            // MI and mRMR
    std::optional<double> fixed_theta;  // HCVR: skip the sweep and use this threshold
    SweepOptions sweep;                 // HCVR: tuning range when no fixed theta

    /// Column id: hcvr, anova_f, mi, mrmr.
    std::string id() const;

    bool operator==(const MethodConfig&) const = default;
};

/// Accepts hcvr, anova_f (alias cfs), mi, mrmr.
MethodKind parse_method_kind(const std::string& text);
std::string to_string(MethodKind kind);

struct SelectionOutcome {
    std::vector<std::size_t> features;
    std::optional<double> theta;
};

/// Fits the selection method on `train` only. HCVR sweeps with `classifier` unless a fixed
/// threshold is configured, then re-selects on all of `train` at the chosen threshold.
SelectionOutcome run_selection(const MethodConfig& method, const Dataset& train,
                               const ClassifierSpec& classifier);

struct ComparisonCell {
    std::string classifier;
    std::string method;
    EvalResult eval;
    std::size_t n_selected = 0;
    std::optional<double> theta;
    std::vector<std::size_t> features;

    bool operator==(const ComparisonCell&) const = default;
};

struct ComparisonTable {
    std::vector<std::string> classifiers;
    std::vector<std::string> methods;
    std::vector<ComparisonCell> cells;  // row-major: classifier, then method

    const ComparisonCell& at(std::size_t classifier, std::size_t method) const {
        return cells.at(classifier * methods.size() + method);
    }
};

/// Every (classifier, method) cell: select on train, train on the selected columns, score on
/// test. An empty selection is scored as the training majority label.
ComparisonTable compare_methods(const Dataset& train, const Dataset& test,
                                std::span<const ClassifierSpec> classifiers,
                                std::span<const MethodConfig> methods);

/// Grid CSV: one row per classifier, four columns per method
/// (<m>_accuracy, <m>_precision, <m>_n_selected, <m>_theta; theta blank for filters).
std::string to_csv(const ComparisonTable& table);

void to_json(nlohmann::json& j, const ComparisonTable& t);
void to_json(nlohmann::json& j, const MethodConfig& m);
void from_json(const nlohmann::json& j, MethodConfig& m);

}  // namespace hcvr
