#include "hcvr/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "hcvr/error.hpp"

namespace hcvr {

namespace {

struct ParamRange {
    double default_value;
    double min;
    double max;
    bool integral;
};

const std::map<std::string, ParamRange>& param_table(ClassifierKind kind) {
    static const std::map<std::string, ParamRange> tree{
        {"max_depth", {20, 1, 1000, true}},
        {"min_samples_split", {2, 2, 1e9, true}},
        {"min_samples_leaf", {1, 1, 1e9, true}},
    };
    static const std::map<std::string, ParamRange> sgd{
        {"learning_rate", {0.01, 1e-12, 10, false}},
        {"epochs", {100, 1, 1e6, true}},
        {"l2", {1e-4, 0, 10, false}},
    };
    static const std::map<std::string, ParamRange> nb{
        {"var_smoothing", {1e-9, 0, 1, false}},
    };
    switch (kind) {
        case ClassifierKind::DecisionTree: return tree;
        case ClassifierKind::LogisticSGD: return sgd;
        case ClassifierKind::GaussianNB: return nb;
    }
    return tree;
}

}  // namespace

std::string to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::DecisionTree: return "decision_tree";
        case ClassifierKind::LogisticSGD: return "logistic_sgd";
        case ClassifierKind::GaussianNB: return "gaussian_nb";
    }
    return "unknown";
}

ClassifierKind parse_classifier_kind(const std::string& text) {
    if (text == "decision_tree" || text == "dt") return ClassifierKind::DecisionTree;
    if (text == "logistic_sgd" || text == "sgd") return ClassifierKind::LogisticSGD;
    if (text == "gaussian_nb" || text == "gnb") return ClassifierKind::GaussianNB;
    throw Error(ErrorCode::InvalidConfig, "unknown classifier '" + text + "'");
}

double ClassifierSpec::param(const std::string& name) const {
    if (auto it = hyperparams.find(name); it != hyperparams.end()) return it->second;
    const auto& table = param_table(kind);
    if (auto it = table.find(name); it != table.end()) return it->second.default_value;
    throw Error(ErrorCode::InvalidHyperparameter,
                "'" + name + "' is not a hyperparameter of " + to_string(kind));
}

void ClassifierSpec::validate() const {
    const auto& table = param_table(kind);
    for (const auto& [name, value] : hyperparams) {
        auto it = table.find(name);
        if (it == table.end()) {
            throw Error(ErrorCode::InvalidHyperparameter,
                        "'" + name + "' is not a hyperparameter of " + to_string(kind));
        }
        const ParamRange& r = it->second;
        if (!(value >= r.min && value <= r.max) || (r.integral && value != std::floor(value))) {
            throw Error(ErrorCode::InvalidHyperparameter,
                        name + " = " + std::to_string(value) + " out of range");
        }
    }
}

ClassifierSpec default_spec(ClassifierKind kind, std::uint64_t seed) {
    return ClassifierSpec{kind, {}, seed};
}

void to_json(nlohmann::json& j, const ClassifierSpec& s) {
    j = nlohmann::json{{"kind", to_string(s.kind)}, {"hyperparams", s.hyperparams}, {"seed", s.seed}};
}

void from_json(const nlohmann::json& j, ClassifierSpec& s) {
    s.kind = parse_classifier_kind(j.at("kind").get<std::string>());
    s.hyperparams = j.value("hyperparams", std::map<std::string, double>{});
    s.seed = j.value("seed", std::uint64_t{0});
}

// ---------------------------------------------------------------------------------------------
// Decision tree (CART, Gini impurity)

int DecisionTreeModel::predict(std::span<const double> x) const {
    int node = 0;
    while (nodes[node].feature >= 0) {
        const TreeNode& n = nodes[node];
        node = x[n.feature] <= n.threshold ? n.left : n.right;
    }
    return nodes[node].label;
}

std::size_t DecisionTreeModel::depth() const {
    std::function<std::size_t(int)> walk = [&](int i) -> std::size_t {
        if (nodes[i].feature < 0) return 0;
        return 1 + std::max(walk(nodes[i].left), walk(nodes[i].right));
    };
    return walk(0);
}

std::size_t DecisionTreeModel::leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.feature < 0; }));
}

namespace {

double gini(std::size_t pos, std::size_t total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(pos) / static_cast<double>(total);
    return 2.0 * p * (1.0 - p);
}

class TreeBuilder {
public:
    TreeBuilder(const std::vector<std::vector<double>>& cols, std::span<const int> y,
                std::size_t max_depth, std::size_t min_split, std::size_t min_leaf)
        : cols_(cols), y_(y), max_depth_(max_depth), min_split_(min_split), min_leaf_(min_leaf) {}

    DecisionTreeModel build() {
        std::vector<std::size_t> rows(y_.size());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        grow(rows, 0);
        return {std::move(nodes_)};
    }

private:
    struct Candidate {
        int feature = -1;
        double threshold = 0.0;
        double impurity = std::numeric_limits<double>::infinity();
    };

    int grow(const std::vector<std::size_t>& rows, std::size_t depth) {
        const int id = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        std::size_t pos = 0;
        for (std::size_t r : rows) pos += static_cast<std::size_t>(y_[r]);
        nodes_[id].label = 2 * pos > rows.size() ? 1 : 0;

        const bool pure = pos == 0 || pos == rows.size();
        if (pure || depth >= max_depth_ || rows.size() < min_split_) return id;

        const Candidate best = best_split(rows, pos);
        if (best.feature < 0) return id;

        std::vector<std::size_t> left, right;
        for (std::size_t r : rows) {
            (cols_[best.feature][r] <= best.threshold ? left : right).push_back(r);
        }
        nodes_[id].feature = best.feature;
        nodes_[id].threshold = best.threshold;
        const int l = grow(left, depth + 1);
        const int r = grow(right, depth + 1);
        nodes_[id].left = l;
        nodes_[id].right = r;
        return id;
    }

    Candidate best_split(const std::vector<std::size_t>& rows, std::size_t pos_total) const {
        Candidate best;
        const std::size_t n = rows.size();
        std::vector<std::pair<double, int>> sorted(n);
        for (std::size_t f = 0; f < cols_.size(); ++f) {
            for (std::size_t k = 0; k < n; ++k) sorted[k] = {cols_[f][rows[k]], y_[rows[k]]};
            std::sort(sorted.begin(), sorted.end());
            std::size_t left_pos = 0;
            for (std::size_t k = 0; k + 1 < n; ++k) {
                left_pos += static_cast<std::size_t>(sorted[k].second);
                if (sorted[k].first == sorted[k + 1].first) continue;
                const std::size_t nl = k + 1;
                const std::size_t nr = n - nl;
                if (nl < min_leaf_ || nr < min_leaf_) continue;
                const double impurity =
                    (static_cast<double>(nl) * gini(left_pos, nl) +
                     static_cast<double>(nr) * gini(pos_total - left_pos, nr)) /
                    static_cast<double>(n);
                if (impurity < best.impurity - 1e-12) {
                    double mid = 0.5 * (sorted[k].first + sorted[k + 1].first);
                    if (mid >= sorted[k + 1].first) mid = sorted[k].first;
                    best = {static_cast<int>(f), mid, impurity};
                }
            }
        }
        return best;
    }

    const std::vector<std::vector<double>>& cols_;
    std::span<const int> y_;
    std::size_t max_depth_;
    std::size_t min_split_;
    std::size_t min_leaf_;
    std::vector<TreeNode> nodes_;
};

// ---------------------------------------------------------------------------------------------

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

LogisticModel train_logistic(const Dataset& x, const ClassifierSpec& spec) {
    const double lr = spec.param("learning_rate");
    const auto epochs = static_cast<std::size_t>(spec.param("epochs"));
    const double l2 = spec.param("l2");

    LogisticModel model;
    model.scaler = ScalerParams::fit(x);
    const Dataset z = model.scaler.transform(x);
    const std::size_t m = z.n_cols();
    model.weights.assign(m, 0.0);

    std::mt19937_64 rng(spec.seed);
    std::vector<std::size_t> order(z.n_rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t r : order) {
            const auto row = z.row(r);
            double s = model.bias;
            for (std::size_t c = 0; c < m; ++c) s += model.weights[c] * row[c];
            const double g = sigmoid(s) - static_cast<double>(z.target()[r]);
            for (std::size_t c = 0; c < m; ++c) {
                model.weights[c] -= lr * (g * row[c] + l2 * model.weights[c]);
            }
            model.bias -= lr * g;
        }
    }
    return model;
}

GaussianNBModel train_gaussian_nb(const Dataset& x, const ClassifierSpec& spec) {
    const std::size_t m = x.n_cols();
    const std::size_t n = x.n_rows();
    GaussianNBModel model;
    std::array<std::size_t, 2> counts{x.count_label(0), x.count_label(1)};
    for (int c = 0; c < 2; ++c) {
        model.log_prior[c] = std::log(static_cast<double>(counts[c]) / static_cast<double>(n));
        model.mean[c].assign(m, 0.0);
        model.var[c].assign(m, 0.0);
    }
    for (std::size_t r = 0; r < n; ++r) {
        const int c = x.target()[r];
        for (std::size_t f = 0; f < m; ++f) model.mean[c][f] += x.at(r, f);
    }
    for (int c = 0; c < 2; ++c) {
        for (double& v : model.mean[c]) v /= static_cast<double>(counts[c]);
    }
    for (std::size_t r = 0; r < n; ++r) {
        const int c = x.target()[r];
        for (std::size_t f = 0; f < m; ++f) {
            const double d = x.at(r, f) - model.mean[c][f];
            model.var[c][f] += d * d;
        }
    }
    // Smoothing is relative to the largest overall feature variance.
    const ScalerParams overall = ScalerParams::fit(x);
    double max_var = 0.0;
    for (double s : overall.stds) max_var = std::max(max_var, s * s);
    double epsilon = spec.param("var_smoothing") * max_var;
    if (epsilon <= 0.0) epsilon = 1e-9;
    for (int c = 0; c < 2; ++c) {
        for (double& v : model.var[c]) v = v / static_cast<double>(counts[c]) + epsilon;
    }
    return model;
}

}  // namespace

double LogisticModel::probability(std::span<const double> x) const {
    double s = bias;
    for (std::size_t c = 0; c < weights.size(); ++c) {
        const double z = scaler.stds[c] == 0.0 ? 0.0 : (x[c] - scaler.means[c]) / scaler.stds[c];
        s += weights[c] * z;
    }
    return sigmoid(s);
}

int GaussianNBModel::predict(std::span<const double> x) const {
    std::array<double, 2> ll{};
    for (int c = 0; c < 2; ++c) {
        ll[c] = log_prior[c];
        for (std::size_t f = 0; f < x.size(); ++f) {
            const double d = x[f] - mean[c][f];
            ll[c] -= 0.5 * (std::log(2.0 * M_PI * var[c][f]) + d * d / var[c][f]);
        }
    }
    return ll[1] > ll[0] ? 1 : 0;
}

Model::Model(ClassifierSpec spec, std::vector<std::size_t> subset, Impl impl)
    : spec_(std::move(spec)), subset_(std::move(subset)), impl_(std::move(impl)) {}

int Model::predict(std::span<const double> row) const {
    std::vector<double> x(subset_.size());
    for (std::size_t k = 0; k < subset_.size(); ++k) x[k] = row[subset_[k]];
    return std::visit([&](const auto& m) { return m.predict(x); }, impl_);
}

std::vector<int> Model::predict(const Dataset& d) const {
    std::vector<int> out(d.n_rows());
    for (std::size_t r = 0; r < d.n_rows(); ++r) out[r] = predict(d.row(r));
    return out;
}

Model train(const ClassifierSpec& spec, const Dataset& data, std::span<const std::size_t> subset) {
    spec.validate();
    if (subset.empty()) throw Error(ErrorCode::EmptySubset, "feature subset is empty");
    for (std::size_t c : subset) {
        if (c >= data.n_cols()) {
            throw Error(ErrorCode::SubsetMismatch, "feature index " + std::to_string(c) +
                                                       " out of range for " +
                                                       std::to_string(data.n_cols()) + " columns");
        }
    }
    const Dataset x = data.take_columns(subset);
    const bool single_class = x.count_label(0) == 0 || x.count_label(1) == 0;
    std::vector<std::size_t> cols(subset.begin(), subset.end());

    switch (spec.kind) {
        case ClassifierKind::DecisionTree: {
            std::vector<std::vector<double>> columns;
            columns.reserve(x.n_cols());
            for (std::size_t c = 0; c < x.n_cols(); ++c) columns.push_back(x.column(c));
            TreeBuilder builder(columns, x.target(),
                                static_cast<std::size_t>(spec.param("max_depth")),
                                static_cast<std::size_t>(spec.param("min_samples_split")),
                                static_cast<std::size_t>(spec.param("min_samples_leaf")));
            return {spec, std::move(cols), builder.build()};
        }
        case ClassifierKind::LogisticSGD:
            if (single_class) throw Error(ErrorCode::SingleClass, "training data has one class");
            return {spec, std::move(cols), train_logistic(x, spec)};
        case ClassifierKind::GaussianNB:
            if (single_class) throw Error(ErrorCode::SingleClass, "training data has one class");
            return {spec, std::move(cols), train_gaussian_nb(x, spec)};
    }
    throw Error(ErrorCode::InvalidConfig, "unknown classifier kind");
}

EvalResult score_predictions(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.size() != predicted.size()) {
        throw Error(ErrorCode::LengthMismatch, "truth and prediction lengths differ");
    }
    EvalResult res;
    res.n_test = truth.size();
    for (std::size_t i = 0; i < truth.size(); ++i) ++res.confusion[truth[i]][predicted[i]];
    const std::size_t tp = res.confusion[1][1];
    const std::size_t tn = res.confusion[0][0];
    const std::size_t fp = res.confusion[0][1];
    res.accuracy = res.n_test == 0 ? 0.0
                                   : static_cast<double>(tp + tn) / static_cast<double>(res.n_test);
    if (tp + fp == 0) {
        res.precision = 0.0;
        res.precision_degenerate = true;
    } else {
        res.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    }
    return res;
}

EvalResult evaluate(const Model& model, const Dataset& test, std::span<const std::size_t> subset) {
    if (!std::equal(subset.begin(), subset.end(), model.feature_subset().begin(),
                    model.feature_subset().end())) {
        throw Error(ErrorCode::SubsetMismatch, "evaluation subset differs from the training subset");
    }
    for (std::size_t c : subset) {
        if (c >= test.n_cols()) {
            throw Error(ErrorCode::SubsetMismatch, "feature index " + std::to_string(c) +
                                                       " out of range for the test data");
        }
    }
    const auto predicted = model.predict(test);
    return score_predictions(test.target(), predicted);
}

int majority_label(const Dataset& d) { return d.count_label(1) > d.count_label(0) ? 1 : 0; }

}  // namespace hcvr
