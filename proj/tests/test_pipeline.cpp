#include <doctest.h>

#include <cmath>
#include <fstream>

#include "hcvr/compare.hpp"
#include "hcvr/error.hpp"
#include "hcvr/run_config.hpp"
#include "hcvr/sweep.hpp"
#include "hcvr/voting.hpp"
#include "test_support.hpp"

using namespace hcvr;

namespace {

template <typename F>
void expect_code(ErrorCode code, F&& f) {
    try {
        f();
        FAIL("expected " << to_string(code));
    } catch (const Error& e) {
        CHECK(e.code() == code);
    }
}

SweepOptions quick_options(double max = 0.5, double step = 0.1) {
    SweepOptions o;
    o.theta_max = max;
    o.step = step;
    o.seed = 7;
    return o;
}

}  // namespace

TEST_CASE("threshold grid") {
    const auto g = threshold_grid(0.0, 0.1, 0.02);
    REQUIRE(g.size() == 6);
    CHECK(g.front() == 0.0);
    CHECK(g[3] == 0.06);
    CHECK(g.back() == 0.1);
    CHECK(threshold_grid(0.0, 0.5, 0.02).size() == 26);
    CHECK(threshold_grid(0.1, 0.2, 0.5) == std::vector<double>{0.1});
    expect_code(ErrorCode::InvalidRange, [] { threshold_grid(0.3, 0.2, 0.02); });
    expect_code(ErrorCode::InvalidRange, [] { threshold_grid(0.0, 1.2, 0.02); });
    expect_code(ErrorCode::InvalidRange, [] { threshold_grid(0.0, 0.5, 0.0); });
    expect_code(ErrorCode::InvalidRange, [] { threshold_grid(-0.1, 0.5, 0.1); });
}

TEST_CASE("best record tie-break") {
    const std::vector<SweepRecord> r{
        {0.0, 10, 1.0, 0.90}, {0.1, 6, 1.0, 0.92}, {0.2, 4, 1.0, 0.92}, {0.3, 4, 1.0, 0.92}, {0.4, 1, 1.0, 0.80}};
    CHECK(best_record(r) == 2);
    const std::vector<SweepRecord> single{{0.2, 3, 0.5, 0.5}};
    CHECK(best_record(single) == 0);
}

TEST_CASE("sweep trace shape") {
    const Dataset d = testing::random_dataset(200, 8, 1);
    const auto spec = default_spec(ClassifierKind::DecisionTree);

    const SweepTrace one = sweep(d, spec, [] {
        SweepOptions o = quick_options(0.1, 0.5);
        return o;
    }());
    REQUIRE(one.records.size() == 1);
    CHECK(one.records[0].theta == 0.0);
    CHECK(one.best_theta == 0.0);

    const SweepTrace t = sweep(d, spec, quick_options());
    REQUIRE(t.records.size() == 6);
    for (std::size_t i = 1; i < t.records.size(); ++i) CHECK(t.records[i].theta > t.records[i - 1].theta);
    const auto& best = t.records[best_record(t.records)];
    CHECK(t.best_theta == best.theta);
    CHECK(t.best_n_selected == best.n_selected);
    CHECK(t.best_validation_accuracy == best.validation_accuracy);
    CHECK(t.classifier_id == "decision_tree");
    CHECK(t.refined.empty());
    CHECK(sweep(d, spec, quick_options()) == t);

    const std::string csv = to_csv(t);
    CHECK(csv.rfind("theta,n_selected,train_acc,val_acc\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("sweep at thresholds that select nothing scores the majority label") {
    const Dataset d = testing::random_dataset(150, 5, 2);
    SweepOptions o = quick_options(1.0, 0.5);
    const SweepTrace t = sweep(d, default_spec(ClassifierKind::GaussianNB), o);
    REQUIRE(t.records.size() == 3);
    const SweepRecord& last = t.records.back();
    CHECK(last.theta == 1.0);
    REQUIRE(last.n_selected == 0);

    const Split inner = train_test_split(d, {o.validation_fraction, o.seed, true});
    const int label = majority_label(inner.train);
    CHECK(last.validation_accuracy ==
          doctest::Approx(static_cast<double>(inner.test.count_label(label)) / inner.test.n_rows()));
}

TEST_CASE("refinement pass") {
    const Dataset d = testing::random_dataset(200, 8, 3);
    SweepOptions o = quick_options(0.4, 0.1);
    o.refine = true;
    const SweepTrace t = sweep(d, default_spec(ClassifierKind::DecisionTree), o);
    CHECK(t.records.size() == 5);
    CHECK_FALSE(t.refined.empty());
    for (const auto& r : t.refined) {
        const double scaled = r.theta * 100.0;
        CHECK(std::abs(scaled - std::round(scaled)) < 1e-6);
    }
    CHECK(t.best_validation_accuracy >= t.records[best_record(t.records)].validation_accuracy);
}

TEST_CASE("sweep rejects a bad classifier spec and range") {
    const Dataset d = testing::random_dataset(80, 4, 4);
    ClassifierSpec bad = default_spec(ClassifierKind::DecisionTree);
    bad.hyperparams["max_depth"] = -3;
    expect_code(ErrorCode::InvalidHyperparameter, [&] { sweep(d, bad, quick_options()); });
    SweepOptions o = quick_options();
    o.theta_min = 0.6;
    expect_code(ErrorCode::InvalidRange, [&] { sweep(d, default_spec(ClassifierKind::DecisionTree), o); });
}

TEST_CASE("method kinds") {
    CHECK(parse_method_kind("cfs") == MethodKind::AnovaF);
    CHECK(parse_method_kind("mrmr") == MethodKind::MRMR);
    CHECK(to_string(MethodKind::MutualInfo) == "mi");
    expect_code(ErrorCode::InvalidConfig, [] { parse_method_kind("rfe"); });
}

TEST_CASE("comparison grid") {
    const Dataset d = testing::random_dataset(300, 12, 5);
    const Split s = train_test_split(d, {0.2, 9, true});
    const std::vector<ClassifierSpec> clfs{default_spec(ClassifierKind::DecisionTree, 1),
                                           default_spec(ClassifierKind::LogisticSGD, 1),
                                           default_spec(ClassifierKind::GaussianNB, 1)};
    std::vector<MethodConfig> methods(4);
    methods[0].kind = MethodKind::HCVR;
    methods[0].sweep = quick_options(0.5, 0.1);
    methods[1].kind = MethodKind::MutualInfo;
    methods[2].kind = MethodKind::AnovaF;
    methods[3].kind = MethodKind::MRMR;
    for (std::size_t m = 1; m < 4; ++m) methods[m].k = 5;

    const ComparisonTable t = compare_methods(s.train, s.test, clfs, methods);
    CHECK(t.classifiers == std::vector<std::string>{"decision_tree", "logistic_sgd", "gaussian_nb"});
    CHECK(t.methods == std::vector<std::string>{"hcvr", "mi", "anova_f", "mrmr"});
    REQUIRE(t.cells.size() == 12);
    for (const auto& c : t.cells) {
        CHECK(c.eval.n_test == s.test.n_rows());
        CHECK(c.n_selected == c.features.size());
        const auto& m = c.eval.confusion;
        CHECK(c.eval.accuracy == static_cast<double>(m[0][0] + m[1][1]) / c.eval.n_test);
    }
    for (std::size_t c = 0; c < 3; ++c) {
        CHECK(t.at(c, 0).theta.has_value());
        CHECK_FALSE(t.at(c, 1).theta.has_value());
        CHECK(t.at(c, 1).n_selected == 5);
    }

    // the HCVR cell reports the sweep's choice
    const SweepTrace trace = sweep(s.train, clfs[0], methods[0].sweep);
    CHECK(*t.at(0, 0).theta == trace.best_theta);
    CHECK(t.at(0, 0).features == select(build_profile(s.train), Threshold(trace.best_theta)).selected);

    // determinism
    const ComparisonTable again = compare_methods(s.train, s.test, clfs, methods);
    CHECK(again.cells == t.cells);
    CHECK(to_csv(again) == to_csv(t));

    const std::string csv = to_csv(t);
    CHECK(csv.rfind("classifier,hcvr_accuracy,hcvr_precision,hcvr_n_selected,hcvr_theta,mi_accuracy", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    const nlohmann::json j = t;
    CHECK(j.at("rows").size() == 3);
    CHECK(j.at("rows").at(1).at("cells").at("hcvr").contains("theta"));
}

TEST_CASE("selection never reads test rows") {
    const Dataset d = testing::random_dataset(240, 10, 6);
    const Split s = train_test_split(d, {0.25, 2, true});
    const std::vector<ClassifierSpec> clfs{default_spec(ClassifierKind::DecisionTree)};
    std::vector<MethodConfig> methods(3);
    methods[0].sweep = quick_options(0.5, 0.1);
    methods[1].kind = MethodKind::AnovaF;
    methods[1].k = 4;
    methods[2].kind = MethodKind::MRMR;
    methods[2].k = 4;

    // scramble the test labels; selections must not move
    std::vector<int> flipped(s.test.target().begin(), s.test.target().end());
    for (auto& y : flipped) y = 1 - y;
    const Dataset scrambled(std::vector<double>(s.test.features().begin(), s.test.features().end()),
                            flipped, s.test.feature_names());

    const auto a = compare_methods(s.train, s.test, clfs, methods);
    const auto b = compare_methods(s.train, scrambled, clfs, methods);
    for (std::size_t m = 0; m < 3; ++m) {
        CHECK(a.at(0, m).features == b.at(0, m).features);
        CHECK(a.at(0, m).features == run_selection(methods[m], s.train, clfs[0]).features);
        CHECK(a.at(0, m).eval.accuracy + b.at(0, m).eval.accuracy == doctest::Approx(1.0));
    }
}

TEST_CASE("an empty HCVR selection is scored as the training majority") {
    const Dataset d = testing::random_dataset(120, 4, 7);
    const Split s = train_test_split(d, {});
    std::vector<MethodConfig> methods(1);
    methods[0].fixed_theta = 1.0;
    const std::vector<ClassifierSpec> clfs{default_spec(ClassifierKind::LogisticSGD)};
    const auto t = compare_methods(s.train, s.test, clfs, methods);
    CHECK(t.at(0, 0).n_selected == 0);
    const int label = majority_label(s.train);
    CHECK(t.at(0, 0).eval.accuracy ==
          doctest::Approx(static_cast<double>(s.test.count_label(label)) / s.test.n_rows()));
}

TEST_CASE("run config") {
    RunConfig c;
    c.data_path = "x.csv";
    c.theta = 0.04;
    c.classifiers = {"dt", "gaussian_nb"};
    c.seed = 99;
    const nlohmann::json j = c;
    CHECK(j.get<RunConfig>() == c);

    RunConfig no_theta;
    CHECK(nlohmann::json(no_theta).at("theta").is_null());
    CHECK(nlohmann::json(no_theta).get<RunConfig>() == no_theta);

    CHECK(c.split_spec().seed == 99);
    CHECK(c.sweep_options().seed == derive_seed(99, 1));
    CHECK(c.classifier_specs().at(1).seed == derive_seed(99, 2));
    CHECK(c.classifier_specs().at(0).kind == ClassifierKind::DecisionTree);
    CHECK(derive_seed(99, 1) != derive_seed(99, 2));
    CHECK(c.method_configs().size() == 4);

    RunConfig bad = c;
    bad.theta = 1.5;
    expect_code(ErrorCode::InvalidThreshold, [&] { bad.validate(); });
    bad = c;
    bad.theta_min = 0.6;
    expect_code(ErrorCode::InvalidRange, [&] { bad.validate(); });
    bad = c;
    bad.k = 0;
    expect_code(ErrorCode::InvalidK, [&] { bad.validate(); });
    bad = c;
    bad.format = "xml";
    expect_code(ErrorCode::InvalidConfig, [&] { bad.validate(); });
    bad = c;
    bad.methods = {"hcvr", "rfe"};
    expect_code(ErrorCode::InvalidConfig, [&] { bad.validate(); });

    const auto dir = testing::temp_dir("run-config");
    std::ofstream(dir / "cfg.json") << j.dump(2);
    CHECK(load_run_config(dir / "cfg.json") == c);
    expect_code(ErrorCode::FileNotFound, [&] { load_run_config(dir / "missing.json"); });
}
