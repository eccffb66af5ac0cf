#include "hcvr/voting.hpp"

#include <cmath>

#include "hcvr/error.hpp"

namespace hcvr {

PairVote vote_pair(const RuleInput& in) {
    const bool a = in.pair == CorrelationClass::High;
    const bool b = in.first_target == CorrelationClass::High;
    const bool c = in.second_target == CorrelationClass::High;

    if (a && b && c) {
        const bool first_wins = std::abs(in.rho1t) >= std::abs(in.rho2t);
        return {first_wins ? 1 : 0, first_wins ? 0 : 1};
    }
    // Every other row reduces to "keep a feature iff it is relevant on its own": in a
    // redundant pair at most one member can be relevant once H/H/H is excluded.
    return {b ? 1 : 0, c ? 1 : 0};
}

VoteTally tally_votes(const CorrelationProfile& profile, Threshold theta) {
    const std::size_t n = profile.n;
    if (n < 2) throw Error(ErrorCode::TooFewFeatures, "voting needs at least 2 features");

    std::vector<CorrelationClass> relevance(n);
    for (std::size_t i = 0; i < n; ++i) relevance[i] = classify(profile.target(i), theta);

    VoteTally tally{std::vector<int>(n, 0), n - 1};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const RuleInput input{classify(profile.pair(i, j), theta), relevance[i], relevance[j],
                                  profile.target(i), profile.target(j)};
            const PairVote v = vote_pair(input);
            tally.keep_votes[i] += v.first;
            tally.keep_votes[j] += v.second;
        }
    }
    return tally;
}

std::vector<std::size_t> majority_selected(const VoteTally& tally) {
    std::vector<std::size_t> selected;
    const int pairs = static_cast<int>(tally.pair_count);
    for (std::size_t i = 0; i < tally.keep_votes.size(); ++i) {
        const int keep = tally.keep_votes[i];
        if (keep > pairs - keep) selected.push_back(i);
    }
    return selected;
}

SelectionReport select(const CorrelationProfile& profile, Threshold theta) {
    SelectionReport report;
    report.theta = theta.value();
    report.tally = tally_votes(profile, theta);
    report.selected = majority_selected(report.tally);
    report.n_features_in = profile.n;
    report.n_features_out = report.selected.size();
    return report;
}

void to_json(nlohmann::json& j, const VoteTally& t) {
    j = nlohmann::json{{"keep_votes", t.keep_votes}, {"pair_count", t.pair_count}};
}

void to_json(nlohmann::json& j, const SelectionReport& r) {
    j = nlohmann::json{{"theta", r.theta},
                       {"selected", r.selected},
                       {"tally", r.tally},
                       {"n_features_in", r.n_features_in},
                       {"n_features_out", r.n_features_out},
                       {"dataset_hash", r.dataset_hash},
                       {"seed", r.seed}};
}

void from_json(const nlohmann::json& j, SelectionReport& r) {
    j.at("theta").get_to(r.theta);
    j.at("selected").get_to(r.selected);
    j.at("tally").at("keep_votes").get_to(r.tally.keep_votes);
    j.at("tally").at("pair_count").get_to(r.tally.pair_count);
    j.at("n_features_in").get_to(r.n_features_in);
    j.at("n_features_out").get_to(r.n_features_out);
    j.at("dataset_hash").get_to(r.dataset_hash);
    j.at("seed").get_to(r.seed);
}

}  // namespace hcvr
