#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcvr/correlation.hpp"

namespace hcvr {

/// One feature pair (f1, f2) with f1 the lower index, classified against the threshold.
struct RuleInput {
    CorrelationClass pair;           // rho(f1, f2)
    CorrelationClass first_target;   // rho(f1, T)
    CorrelationClass second_target;  // rho(f2, T)
    double rho1t = 0.0;              // raw rho(f1, T), consulted only when all three are High
    double rho2t = 0.0;              // raw rho(f2, T)
};

struct PairVote {
    int first = 0;
    int second = 0;

    bool operator==(const PairVote&) const = default;
};

/// Pairwise voting rule table.
///
///   rho(f1,f2)  rho(f1,T)  rho(f2,T)   f1  f2
///       H           L          L        0   0
///       H           H          L        1   0
///       H           L          H        0   1
///       H           H          H        P   Q     P = |rho1t| >= |rho2t|, Q = !P
///       L           H          L        1   0
///       L           L          H        0   1
///       L           H          H        1   1
///       L           L          L        0   0
///
/// The H/H/H row compares absolute correlations so that a strongly negative correlate counts
/// as strongly relevant; on an exact tie f1 (the lower index) keeps its vote.
PairVote vote_pair(const RuleInput& input);

struct VoteTally {
    std::vector<int> keep_votes;
    std::size_t pair_count = 0;  // votes each feature receives: n - 1

    bool operator==(const VoteTally&) const = default;
};

/// Evaluates every unordered pair (i < j) once, always as (f1 = i, f2 = j).
VoteTally tally_votes(const CorrelationProfile& profile, Threshold theta);

struct SelectionReport {
    double theta = 0.0;
    std::vector<std::size_t> selected;  // ascending
    VoteTally tally;
    std::size_t n_features_in = 0;
    std::size_t n_features_out = 0;
    std::string dataset_hash;
    std::uint64_t seed = 0;

    bool operator==(const SelectionReport&) const = default;
};

/// Keeps feature i iff keep_votes[i] > (n - 1) - keep_votes[i]; an even split discards.
SelectionReport select(const CorrelationProfile& profile, Threshold theta);

/// Majority keep rule on its own, exposed for tallies built elsewhere.
std::vector<std::size_t> majority_selected(const VoteTally& tally);

void to_json(nlohmann::json& j, const VoteTally& t);
void to_json(nlohmann::json& j, const SelectionReport& r);
void from_json(const nlohmann::json& j, SelectionReport& r);

}  // namespace hcvr
