#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcvr/dataset.hpp"

namespace hcvr {

enum class RankMethod { AnovaF, MutualInfo, MRMR };

std::string to_string(RankMethod method);

struct RankedFeatures {
    RankMethod method = RankMethod::AnovaF;
    std::vector<double> scores;
    std::vector<std::size_t> order;  // descending score, ties by ascending index

    bool operator==(const RankedFeatures&) const = default;
};

/// Sorts indices by descending score with ascending-index tie-break.
std::vector<std::size_t> rank_order(std::span<const double> scores);

/// One-way ANOVA F statistic of each feature against the binary label.
///
/// F = (SSB / 1) / (SSW / (N - 2)). A feature whose class means coincide scores 0; one that
/// separates the classes with zero within-class spread scores the largest finite double.
RankedFeatures anova_f_scores(const Dataset& d);

/// The "CFS" baseline of the comparison tables: it is the f_classif ranking, not Hall's
/// merit-based subset search.
inline RankedFeatures cfs_scores(const Dataset& d) { return anova_f_scores(d); }

/// Bin index per value from equal-frequency cut points. Ties always share a bin, so heavily
/// tied columns may use fewer than n_bins bins.
std::vector<int> discretize_equal_frequency(std::span<const double> x, std::size_t n_bins);

/// Plug-in mutual information (nats) of two discrete sequences, clamped at 0.
double mutual_information(std::span<const int> a, std::span<const int> b);

/// MI between each equal-frequency-binned feature and the target.
RankedFeatures mutual_info_scores(const Dataset& d, std::size_t n_bins = 10);

/// Greedy mRMR (difference criterion): first the most relevant feature, then repeatedly the
/// feature maximizing MI(f; T) - mean_s MI(f; s) over already-picked s. Ties go to the
/// lower index. Returns k indices in pick order.
std::vector<std::size_t> mrmr_select(const Dataset& d, std::size_t k, std::size_t n_bins = 10);

/// mRMR pick order over all features, scored by rank (n - position) so it fits RankedFeatures.
RankedFeatures mrmr_ranking(const Dataset& d, std::size_t k, std::size_t n_bins = 10);

std::vector<std::size_t> k_best(const RankedFeatures& ranked, std::size_t k);

void to_json(nlohmann::json& j, const RankedFeatures& r);

}  // namespace hcvr
