#include "hcvr/sweep.hpp"

#include <cmath>
#include <cstdio>

#include "hcvr/correlation.hpp"
#include "hcvr/error.hpp"
#include "hcvr/voting.hpp"

namespace hcvr {

std::vector<double> threshold_grid(double theta_min, double theta_max, double step) {
    if (!(theta_min >= 0.0 && theta_min < theta_max && theta_max <= 1.0)) {
        throw Error(ErrorCode::InvalidRange, "need 0 <= theta_min < theta_max <= 1");
    }
    if (!(step > 0.0)) throw Error(ErrorCode::InvalidRange, "step must be positive");
    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
        const double theta = std::round((theta_min + static_cast<double>(k) * step) * 1e10) / 1e10;
        if (theta > theta_max + 1e-9) break;
        grid.push_back(std::min(theta, 1.0));
    }
    return grid;
}

std::size_t best_record(std::span<const SweepRecord> records) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& a = records[i];
        const auto& b = records[best];
        if (a.validation_accuracy != b.validation_accuracy) {
            if (a.validation_accuracy > b.validation_accuracy) best = i;
        } else if (a.n_selected != b.n_selected) {
            if (a.n_selected < b.n_selected) best = i;
        } else if (a.theta < b.theta) {
            best = i;
        }
    }
    return best;
}

namespace {

SweepRecord evaluate_theta(double theta, const CorrelationProfile& profile, const Dataset& fit,
                           const Dataset& validation, const ClassifierSpec& classifier) {
    const SelectionReport report = select(profile, Threshold(theta));
    SweepRecord rec{theta, report.n_features_out, 0.0, 0.0};
    if (report.selected.empty()) {
        const int label = majority_label(fit);
        rec.train_accuracy = static_cast<double>(fit.count_label(label)) /
                             static_cast<double>(fit.n_rows());
        rec.validation_accuracy = static_cast<double>(validation.count_label(label)) /
                                  static_cast<double>(validation.n_rows());
        return rec;
    }
    const Model model = train(classifier, fit, report.selected);
    rec.train_accuracy = evaluate(model, fit, report.selected).accuracy;
    rec.validation_accuracy = evaluate(model, validation, report.selected).accuracy;
    return rec;
}

}  // namespace

SweepTrace sweep(const Dataset& train, const ClassifierSpec& classifier,
                 const SweepOptions& options) {
    const auto grid = threshold_grid(options.theta_min, options.theta_max, options.step);
    classifier.validate();

    const Split inner = train_test_split(
        train, SplitSpec{options.validation_fraction, options.seed, /*stratified=*/true});
    const CorrelationProfile profile = build_profile(inner.train);

    SweepTrace trace;
    trace.classifier_id = to_string(classifier.kind);
    for (double theta : grid) {
        trace.records.push_back(evaluate_theta(theta, profile, inner.train, inner.test, classifier));
    }

    std::vector<SweepRecord> all = trace.records;
    if (options.refine) {
        const double centre = trace.records[best_record(trace.records)].theta;
        const double lo = std::max(options.theta_min, centre - options.step);
        const double hi = std::min(options.theta_max, centre + options.step);
        if (lo < hi) {
            for (double theta : threshold_grid(lo, hi, options.step / 10.0)) {
                trace.refined.push_back(
                    evaluate_theta(theta, profile, inner.train, inner.test, classifier));
            }
        }
        all.insert(all.end(), trace.refined.begin(), trace.refined.end());
    }
    const SweepRecord& best = all[best_record(all)];
    trace.best_theta = best.theta;
    trace.best_n_selected = best.n_selected;
    trace.best_validation_accuracy = best.validation_accuracy;
    return trace;
}

std::string to_csv(const SweepTrace& trace) {
    std::string out = "theta,n_selected,train_acc,val_acc\n";
    char line[128];
    for (const auto& r : trace.records) {
        std::snprintf(line, sizeof line, "%.6f,%zu,%.6f,%.6f\n", r.theta, r.n_selected,
                      r.train_accuracy, r.validation_accuracy);
        out += line;
    }
    return out;
}

void to_json(nlohmann::json& j, const SweepRecord& r) {
    j = nlohmann::json{{"theta", r.theta},
                       {"n_selected", r.n_selected},
                       {"train_accuracy", r.train_accuracy},
                       {"validation_accuracy", r.validation_accuracy}};
}

void to_json(nlohmann::json& j, const SweepTrace& t) {
    j = nlohmann::json{{"classifier_id", t.classifier_id},
                       {"records", t.records},
                       {"refined", t.refined},
                       {"best_theta", t.best_theta},
                       {"best_n_selected", t.best_n_selected},
                       {"best_validation_accuracy", t.best_validation_accuracy}};
}

void to_json(nlohmann::json& j, const SweepOptions& o) {
    j = nlohmann::json{{"theta_min", o.theta_min},
                       {"theta_max", o.theta_max},
                       {"step", o.step},
                       {"refine", o.refine},
                       {"validation_fraction", o.validation_fraction},
                       {"seed", o.seed}};
}

void from_json(const nlohmann::json& j, SweepOptions& o) {
    const SweepOptions d;
    o.theta_min = j.value("theta_min", d.theta_min);
    o.theta_max = j.value("theta_max", d.theta_max);
    o.step = j.value("step", d.step);
    o.refine = j.value("refine", d.refine);
    o.validation_fraction = j.value("validation_fraction", d.validation_fraction);
    o.seed = j.value("seed", d.seed);
}

}  // namespace hcvr
