#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hcvr/dataset.hpp"

namespace hcvr {

enum class ClassifierKind { DecisionTree, LogisticSGD, GaussianNB };

std::string to_string(ClassifierKind kind);
/// Accepts the canonical ids (decision_tree, logistic_sgd, gaussian_nb) and the short
/// forms dt, sgd, gnb.
ClassifierKind parse_classifier_kind(const std::string& text);

/// Classifier kind plus hyperparameters; missing hyperparameters take the defaults below.
///
///   decision_tree  max_depth = 20, min_samples_split = 2, min_samples_leaf = 1
///   logistic_sgd   learning_rate = 0.01, epochs = 100, l2 = 1e-4
///   gaussian_nb    var_smoothing = 1e-9
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::DecisionTree;
    std::map<std::string, double> hyperparams;
    std::uint64_t seed = 0;

    /// Hyperparameter value, falling back to the kind's default.
    double param(const std::string& name) const;
    /// Throws InvalidHyperparameter on unknown names or out-of-range values.
    void validate() const;

    bool operator==(const ClassifierSpec&) const = default;
};

ClassifierSpec default_spec(ClassifierKind kind, std::uint64_t seed = 0);

void to_json(nlohmann::json& j, const ClassifierSpec& s);
void from_json(const nlohmann::json& j, ClassifierSpec& s);

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;
};

struct DecisionTreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    int predict(std::span<const double> x) const;
    std::size_t depth() const;
    std::size_t leaf_count() const;
};

struct LogisticModel {
    ScalerParams scaler;
    std::vector<double> weights;
    double bias = 0.0;

    double probability(std::span<const double> x) const;
    int predict(std::span<const double> x) const { return probability(x) >= 0.5 ? 1 : 0; }
};

struct GaussianNBModel {
    std::array<double, 2> log_prior{};
    std::array<std::vector<double>, 2> mean;
    std::array<std::vector<double>, 2> var;

    int predict(std::span<const double> x) const;
};

/// A trained classifier bound to the feature subset it was trained on. Immutable.
class Model {
public:
    using Impl = std::variant<DecisionTreeModel, LogisticModel, GaussianNBModel>;

    Model(ClassifierSpec spec, std::vector<std::size_t> subset, Impl impl);

    const ClassifierSpec& spec() const noexcept { return spec_; }
    const std::vector<std::size_t>& feature_subset() const noexcept { return subset_; }
    const Impl& impl() const noexcept { return impl_; }

    /// Predicts from a full-width row; only the subset columns are read.
    int predict(std::span<const double> row) const;
    std::vector<int> predict(const Dataset& d) const;

private:
    ClassifierSpec spec_;
    std::vector<std::size_t> subset_;
    Impl impl_;
};

/// Deterministic in (spec, data, subset). A decision tree accepts single-class data and
/// becomes one leaf; the other kinds throw SingleClass.
Model train(const ClassifierSpec& spec, const Dataset& train, std::span<const std::size_t> subset);

struct EvalResult {
    double accuracy = 0.0;
    double precision = 0.0;
    std::array<std::array<std::size_t, 2>, 2> confusion{};  // [actual][predicted]
    std::size_t n_test = 0;
    bool precision_degenerate = false;  // no positive predictions, precision reported as 0

    bool operator==(const EvalResult&) const = default;
};

EvalResult score_predictions(std::span<const int> truth, std::span<const int> predicted);

/// Throws SubsetMismatch unless `subset` is exactly the model's training subset.
EvalResult evaluate(const Model& model, const Dataset& test, std::span<const std::size_t> subset);

/// Most frequent label; ties go to 0.
int majority_label(const Dataset& d);

}  // namespace hcvr
