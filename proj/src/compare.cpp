#include "hcvr/compare.hpp"

#include <cstdio>

#include "hcvr/baselines.hpp"
#include "hcvr/correlation.hpp"
#include "hcvr/error.hpp"
#include "hcvr/voting.hpp"

namespace hcvr {

std::string to_string(MethodKind kind) {
    switch (kind) {
        case MethodKind::HCVR: return "hcvr";
        case MethodKind::AnovaF: return "anova_f";
        case MethodKind::MutualInfo: return "mi";
        case MethodKind::MRMR: return "mrmr";
    }
    return "unknown";
}

MethodKind parse_method_kind(const std::string& text) {
    if (text == "hcvr") return MethodKind::HCVR;
    if (text == "anova_f" || text == "cfs") return MethodKind::AnovaF;
    if (text == "mi") return MethodKind::MutualInfo;
    if (text == "mrmr") return MethodKind::MRMR;
    throw Error(ErrorCode::InvalidConfig, "unknown selection method '" + text + "'");
}

std::string MethodConfig::id() const { return to_string(kind); }

SelectionOutcome run_selection(const MethodConfig& method, const Dataset& train,
                               const ClassifierSpec& classifier) {
    switch (method.kind) {
        case MethodKind::HCVR: {
            const double theta = method.fixed_theta
                                     ? *method.fixed_theta
                                     : sweep(train, classifier, method.sweep).best_theta;
            const auto report = select(build_profile(train), Threshold(theta));
            return {report.selected, theta};
        }
        case MethodKind::AnovaF:
            return {k_best(anova_f_scores(train), method.k), std::nullopt};
        case MethodKind::MutualInfo:
            return {k_best(mutual_info_scores(train, method.n_bins), method.k), std::nullopt};
        case MethodKind::MRMR:
            return {mrmr_select(train, method.k, method.n_bins), std::nullopt};
    }
    throw Error(ErrorCode::InvalidConfig, "unknown selection method");
}

ComparisonTable compare_methods(const Dataset& train, const Dataset& test,
                                std::span<const ClassifierSpec> classifiers,
                                std::span<const MethodConfig> methods) {
    if (classifiers.empty()) throw Error(ErrorCode::InvalidConfig, "no classifiers to compare");
    if (methods.empty()) throw Error(ErrorCode::InvalidConfig, "no selection methods to compare");

    ComparisonTable table;
    for (const auto& c : classifiers) table.classifiers.push_back(to_string(c.kind));
    for (const auto& m : methods) table.methods.push_back(m.id());

    // Filter selections do not depend on the classifier; fit them once.
    std::vector<std::optional<SelectionOutcome>> shared(methods.size());
    for (std::size_t m = 0; m < methods.size(); ++m) {
        if (methods[m].kind != MethodKind::HCVR) {
            shared[m] = run_selection(methods[m], train, classifiers.front());
        }
    }

    for (const auto& spec : classifiers) {
        for (std::size_t m = 0; m < methods.size(); ++m) {
            const SelectionOutcome outcome =
                shared[m] ? *shared[m] : run_selection(methods[m], train, spec);
            ComparisonCell cell;
            cell.classifier = to_string(spec.kind);
            cell.method = methods[m].id();
            cell.n_selected = outcome.features.size();
            cell.theta = outcome.theta;
            cell.features = outcome.features;
            if (outcome.features.empty()) {
                const std::vector<int> predicted(test.n_rows(), majority_label(train));
                cell.eval = score_predictions(test.target(), predicted);
            } else {
                const Model model = hcvr::train(spec, train, outcome.features);
                cell.eval = evaluate(model, test, outcome.features);
            }
            table.cells.push_back(std::move(cell));
        }
    }
    return table;
}

std::string to_csv(const ComparisonTable& table) {
    std::string out = "classifier";
    for (const auto& m : table.methods) {
        out += "," + m + "_accuracy," + m + "_precision," + m + "_n_selected," + m + "_theta";
    }
    out += "\n";
    char buf[64];
    for (std::size_t c = 0; c < table.classifiers.size(); ++c) {
        out += table.classifiers[c];
        for (std::size_t m = 0; m < table.methods.size(); ++m) {
            const auto& cell = table.at(c, m);
            std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%zu,", cell.eval.accuracy,
                          cell.eval.precision, cell.n_selected);
            out += buf;
            if (cell.theta) {
                std::snprintf(buf, sizeof buf, "%.6f", *cell.theta);
                out += buf;
            }
        }
        out += "\n";
    }
    return out;
}

void to_json(nlohmann::json& j, const ComparisonTable& t) {
    auto rows = nlohmann::json::array();
    for (std::size_t c = 0; c < t.classifiers.size(); ++c) {
        nlohmann::json cells = nlohmann::json::object();
        for (std::size_t m = 0; m < t.methods.size(); ++m) {
            const auto& cell = t.at(c, m);
            nlohmann::json jc{{"accuracy", cell.eval.accuracy},
                              {"precision", cell.eval.precision},
                              {"precision_degenerate", cell.eval.precision_degenerate},
                              {"n_selected", cell.n_selected},
                              {"selected", cell.features},
                              {"confusion", cell.eval.confusion}};
            if (cell.theta) jc["theta"] = *cell.theta;
            cells[t.methods[m]] = std::move(jc);
        }
        rows.push_back({{"classifier", t.classifiers[c]}, {"cells", std::move(cells)}});
    }
    j = nlohmann::json{{"classifiers", t.classifiers}, {"methods", t.methods}, {"rows", rows}};
}

void to_json(nlohmann::json& j, const MethodConfig& m) {
    j = nlohmann::json{{"kind", m.id()}, {"k", m.k}, {"n_bins", m.n_bins}, {"sweep", m.sweep}};
    if (m.fixed_theta) j["fixed_theta"] = *m.fixed_theta;
}

void from_json(const nlohmann::json& j, MethodConfig& m) {
    m.kind = parse_method_kind(j.at("kind").get<std::string>());
    m.k = j.value("k", std::size_t{10});
    m.n_bins = j.value("n_bins", std::size_t{10});
    m.sweep = j.value("sweep", SweepOptions{});
    if (j.contains("fixed_theta")) {
        m.fixed_theta = j.at("fixed_theta").get<double>();
    } else {
        m.fixed_theta.reset();
    }
}

}  // namespace hcvr
