#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hcvr/dataset.hpp"
#include "hcvr/error.hpp"
#include "test_support.hpp"

using namespace hcvr;

namespace {

Dataset parse(const std::string& text, LabelColumn label = -1L, bool header = false) {
    std::istringstream in(text);
    return parse_csv(in, label, header);
}

}  // namespace

TEST_CASE("three-row csv parses features, labels and default names") {
    const Dataset d = parse("1,2,0\n3,4,1\n5,6,0\n");
    CHECK(d.n_rows() == 3);
    CHECK(d.n_cols() == 2);
    CHECK(std::vector<int>(d.target().begin(), d.target().end()) == std::vector<int>{0, 1, 0});
    CHECK(d.feature_names() == std::vector<std::string>{"f0", "f1"});
    CHECK(d.at(2, 1) == 6.0);
}

TEST_CASE("header names and label by name or leading index") {
    const Dataset byname = parse("a,y,b\n1,0,2\n3,1,4\n", std::string("y"), true);
    CHECK(byname.feature_names() == std::vector<std::string>{"a", "b"});
    CHECK(byname.at(1, 1) == 4.0);
    CHECK(byname.target()[1] == 1);

    const Dataset first = parse("1,5,6\n0,7,8\n", 0L, false);
    CHECK(first.target()[0] == 1);
    CHECK(first.at(0, 0) == 5.0);
    CHECK(first.feature_names() == std::vector<std::string>{"f0", "f1"});
}

TEST_CASE("whitespace, CRLF and blank lines are tolerated") {
    const Dataset d = parse("1.5, 2 ,1\r\n\n 3,4e1, 0\r\n");
    CHECK(d.n_rows() == 2);
    CHECK(d.at(1, 1) == 40.0);
}

TEST_CASE("non-numeric cell reports row and column") {
    try {
        parse("1,2,0\n3,\"abc\",1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row() == 1);
        CHECK(e.col() == 1);
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("abc") != std::string::npos);
    }
}

TEST_CASE("load errors") {
    CHECK_THROWS_AS(parse("1,2,2\n"), Error);
    try {
        parse("1,2,2\n");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LabelError);
    }
    try {
        parse("");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyDataset);
    }
    try {
        parse("a,b,y\n", std::string("y"), true);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyDataset);
    }
    try {
        load_csv("/nonexistent/spambase.data", -1L, false);
        FAIL("expected FileNotFound");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FileNotFound);
    }
    try {
        parse("1,2,0\n3,1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row() == 1);
    }
    try {
        parse("x,y\n1,0\n", std::string("z"), true);
        FAIL("expected LabelError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LabelError);
    }
    CHECK_THROWS_AS(parse("nan,0\n1,1\n"), ParseError);
}

TEST_CASE("label column parsing") {
    CHECK(std::get<long>(parse_label_column("-1")) == -1);
    CHECK(std::get<long>(parse_label_column("3")) == 3);
    CHECK(std::get<std::string>(parse_label_column("spam")) == "spam");
}

TEST_CASE("dataset constructor enforces invariants") {
    CHECK_THROWS_AS(Dataset({1.0, 2.0}, {0}, {"a"}), Error);
    CHECK_THROWS_AS(Dataset({1.0, 2.0}, {0, 1}, {"a", "a"}), Error);
    CHECK_THROWS_AS(Dataset({1.0, INFINITY}, {0, 1}, {"a"}), Error);
    CHECK_THROWS_AS(Dataset({1.0, 2.0}, {0, 2}, {"a"}), Error);
}

TEST_CASE("SPAMBASE loads with 57 features") {
    const Dataset d = testing::load_spambase();
    CHECK(d.n_cols() == 57);
    CHECK(d.feature_names().front() == "f0");
    CHECK(d.feature_names().back() == "f56");
    // UCI original: 4601 rows (2788 / 1813). The bundled KEEL redistribution lacks
    // three non-spam rows and one spam row: 4597 rows (2785 / 1812).
    if (d.n_rows() == 4601) {
        CHECK(d.count_label(0) == 2788);
        CHECK(d.count_label(1) == 1813);
    } else {
        CHECK(d.n_rows() == 4597);
        CHECK(d.count_label(0) == 2785);
        CHECK(d.count_label(1) == 1812);
    }
}

TEST_CASE("test row count follows ceil(n * fraction)") {
    CHECK(test_row_count(4601, 0.2) == 921);
    CHECK(4601 - test_row_count(4601, 0.2) == 3680);
    CHECK(test_row_count(10, 0.2) == 2);
    CHECK(test_row_count(4597, 0.2) == 920);
    CHECK(test_row_count(3, 0.5) == 2);
}

TEST_CASE("split sizes, disjointness and determinism") {
    const Dataset d = testing::random_dataset(10, 3, 5);
    for (bool stratified : {true, false}) {
        const Split s = train_test_split(d, {0.2, 7, stratified});
        CHECK(s.train.n_rows() == 8);
        CHECK(s.test.n_rows() == 2);
    }

    const Dataset big = testing::random_dataset(203, 4, 11);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Split s = train_test_split(big, {0.25, seed, true});
        std::set<std::size_t> all(s.train_rows.begin(), s.train_rows.end());
        for (std::size_t r : s.test_rows) CHECK(all.insert(r).second);
        CHECK(all.size() == big.n_rows());
        CHECK(*all.rbegin() == big.n_rows() - 1);

        // stratification keeps each class within one row of its proportional share
        const double expected1 = static_cast<double>(big.count_label(1)) *
                                 static_cast<double>(s.test.n_rows()) / big.n_rows();
        CHECK(std::abs(static_cast<double>(s.test.count_label(1)) - expected1) <= 1.0);

        const Split again = train_test_split(big, {0.25, seed, true});
        CHECK(again.train_rows == s.train_rows);
        CHECK(again.test_rows == s.test_rows);
        CHECK(again.train == s.train);
    }
    CHECK(train_test_split(big, {0.25, 1, true}).test_rows !=
          train_test_split(big, {0.25, 2, true}).test_rows);
}

TEST_CASE("split errors") {
    const Dataset d = testing::random_dataset(10, 2, 1);
    for (double f : {0.0, 1.0, -0.1, 1.5}) {
        try {
            train_test_split(d, {f, 1, true});
            FAIL("expected InvalidFraction");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InvalidFraction);
        }
    }
    const Dataset lonely({1, 2, 3, 4}, {0, 0, 0, 1}, {"a"});
    try {
        train_test_split(lonely, {0.5, 1, true});
        FAIL("expected StratifyError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::StratifyError);
    }
    CHECK_NOTHROW(train_test_split(lonely, {0.5, 1, false}));
    const Dataset one({1.0}, {0}, {"a"});
    CHECK_THROWS_AS(train_test_split(one, {0.5, 1, false}), Error);
}

TEST_CASE("standardize uses population std and train-only parameters") {
    const Dataset train({2, 5, 4, 5, 6, 5}, {0, 1, 0}, {"a", "const"});
    const Dataset test({8, 5, 4, 1}, {1, 0}, {"a", "const"});
    const std::vector<Dataset> others{test};
    const Standardized s = standardize(train, others);

    CHECK(s.train.at(0, 0) == doctest::Approx(-1.2247449).epsilon(1e-6));
    CHECK(s.train.at(1, 0) == doctest::Approx(0.0));
    CHECK(s.train.at(2, 0) == doctest::Approx(1.2247449).epsilon(1e-6));
    for (std::size_t r = 0; r < 3; ++r) CHECK(s.train.at(r, 1) == 0.0);

    // test row transformed with the train mean 4 and std sqrt(8/3)
    CHECK(s.others[0].at(0, 0) == doctest::Approx((8.0 - 4.0) / std::sqrt(8.0 / 3.0)));
    CHECK(s.others[0].at(1, 0) == doctest::Approx(0.0));
    CHECK(s.others[0].at(1, 1) == 0.0);
    CHECK(s.params.stds[1] == 0.0);
}

TEST_CASE("standardize round trip recovers the data") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dataset d = testing::random_dataset(40, 6, seed);
        const ScalerParams p = ScalerParams::fit(d);
        const Dataset back = p.inverse_transform(p.transform(d));
        for (std::size_t i = 0; i < d.features().size(); ++i) {
            const double want = d.features()[i];
            CHECK(std::abs(back.features()[i] - want) <= 1e-9 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("scaler params serialize as means/stds json") {
    const ScalerParams p{{1.5, -2.0}, {0.25, 0.0}};
    const nlohmann::json j = p;
    CHECK(j.at("means") == nlohmann::json({1.5, -2.0}));
    CHECK(j.at("stds") == nlohmann::json({0.25, 0.0}));
    CHECK(j.get<ScalerParams>() == p);
}

TEST_CASE("content hash tracks content") {
    const Dataset a = testing::random_dataset(20, 3, 1);
    const Dataset b = testing::random_dataset(20, 3, 2);
    CHECK(content_hash(a) == content_hash(testing::random_dataset(20, 3, 1)));
    CHECK(content_hash(a) != content_hash(b));
    CHECK(content_hash(a).size() == 16);
}
