#include "hcvr/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "hcvr/error.hpp"

namespace hcvr {

std::string to_string(RankMethod method) {
    switch (method) {
        case RankMethod::AnovaF: return "anova_f";
        case RankMethod::MutualInfo: return "mi";
        case RankMethod::MRMR: return "mrmr";
    }
    return "unknown";
}

std::vector<std::size_t> rank_order(std::span<const double> scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

RankedFeatures anova_f_scores(const Dataset& d) {
    const std::size_t n0 = d.count_label(0);
    const std::size_t n1 = d.count_label(1);
    if (n0 == 0 || n1 == 0) throw Error(ErrorCode::SingleClass, "ANOVA needs both classes");
    if (d.n_rows() < 3) throw Error(ErrorCode::TooFewSamples, "ANOVA needs at least 3 rows");

    RankedFeatures out{RankMethod::AnovaF, std::vector<double>(d.n_cols(), 0.0), {}};
    const double dof_within = static_cast<double>(d.n_rows()) - 2.0;
    for (std::size_t c = 0; c < d.n_cols(); ++c) {
        std::array<double, 2> sum{};
        for (std::size_t r = 0; r < d.n_rows(); ++r) sum[d.target()[r]] += d.at(r, c);
        const std::array<double, 2> mean{sum[0] / static_cast<double>(n0),
                                         sum[1] / static_cast<double>(n1)};
        const double grand = (sum[0] + sum[1]) / static_cast<double>(d.n_rows());
        double ssw = 0.0;
        for (std::size_t r = 0; r < d.n_rows(); ++r) {
            const double dev = d.at(r, c) - mean[d.target()[r]];
            ssw += dev * dev;
        }
        if (mean[0] == mean[1]) continue;
        const double ssb = static_cast<double>(n0) * (mean[0] - grand) * (mean[0] - grand) +
                           static_cast<double>(n1) * (mean[1] - grand) * (mean[1] - grand);
        out.scores[c] = ssw == 0.0 ? std::numeric_limits<double>::max()
                                   : ssb / (ssw / dof_within);
    }
    out.order = rank_order(out.scores);
    return out;
}

std::vector<int> discretize_equal_frequency(std::span<const double> x, std::size_t n_bins) {
    if (n_bins < 2) throw Error(ErrorCode::InvalidRange, "need at least 2 bins");
    if (x.empty()) return {};
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> cuts;
    for (std::size_t b = 1; b < n_bins; ++b) {
        cuts.push_back(sorted[b * sorted.size() / n_bins]);
    }
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<int> bins(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        bins[i] = static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), x[i]) - cuts.begin());
    }
    return bins;
}

double mutual_information(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "MI inputs differ in length");
    if (a.empty()) return 0.0;
    const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
    const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
    const std::size_t na = static_cast<std::size_t>(*amax - *amin + 1);
    const std::size_t nb = static_cast<std::size_t>(*bmax - *bmin + 1);

    std::vector<double> joint(na * nb, 0.0), pa(na, 0.0), pb(nb, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto ia = static_cast<std::size_t>(a[i] - *amin);
        const auto ib = static_cast<std::size_t>(b[i] - *bmin);
        joint[ia * nb + ib] += 1.0;
        pa[ia] += 1.0;
        pb[ib] += 1.0;
    }
    const double n = static_cast<double>(a.size());
    double mi = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            const double c = joint[i * nb + j];
            if (c == 0.0) continue;
            // p(x,y) log(p(x,y) / (p(x) p(y))) written with raw counts
            mi += c / n * std::log(c * n / (pa[i] * pb[j]));
        }
    }
    return std::max(mi, 0.0);
}

namespace {

std::vector<std::vector<int>> discretize_all(const Dataset& d, std::size_t n_bins) {
    std::vector<std::vector<int>> out;
    out.reserve(d.n_cols());
    for (std::size_t c = 0; c < d.n_cols(); ++c) {
        out.push_back(discretize_equal_frequency(d.column(c), n_bins));
    }
    return out;
}

}  // namespace

RankedFeatures mutual_info_scores(const Dataset& d, std::size_t n_bins) {
    const auto bins = discretize_all(d, n_bins);
    RankedFeatures out{RankMethod::MutualInfo, std::vector<double>(d.n_cols(), 0.0), {}};
    for (std::size_t c = 0; c < d.n_cols(); ++c) {
        out.scores[c] = mutual_information(bins[c], d.target());
    }
    out.order = rank_order(out.scores);
    return out;
}

std::vector<std::size_t> mrmr_select(const Dataset& d, std::size_t k, std::size_t n_bins) {
    const std::size_t n = d.n_cols();
    if (k < 1 || k > n) {
        throw Error(ErrorCode::InvalidK,
                    "k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    const auto bins = discretize_all(d, n_bins);
    std::vector<double> relevance(n);
    for (std::size_t c = 0; c < n; ++c) relevance[c] = mutual_information(bins[c], d.target());

    std::vector<std::size_t> picked;
    std::vector<bool> used(n, false);
    std::vector<double> redundancy_sum(n, 0.0);
    while (picked.size() < k) {
        std::size_t best = n;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c]) continue;
            const double score =
                picked.empty() ? relevance[c]
                               : relevance[c] - redundancy_sum[c] / static_cast<double>(picked.size());
            if (score > best_score) {
                best_score = score;
                best = c;
            }
        }
        used[best] = true;
        picked.push_back(best);
        for (std::size_t c = 0; c < n; ++c) {
            if (!used[c]) redundancy_sum[c] += mutual_information(bins[c], bins[best]);
        }
    }
    return picked;
}

RankedFeatures mrmr_ranking(const Dataset& d, std::size_t k, std::size_t n_bins) {
    const auto picked = mrmr_select(d, k, n_bins);
    RankedFeatures out{RankMethod::MRMR, std::vector<double>(d.n_cols(), 0.0), {}};
    for (std::size_t pos = 0; pos < picked.size(); ++pos) {
        out.scores[picked[pos]] = static_cast<double>(d.n_cols() - pos);
    }
    out.order = rank_order(out.scores);
    return out;
}

std::vector<std::size_t> k_best(const RankedFeatures& ranked, std::size_t k) {
    if (k < 1 || k > ranked.order.size()) {
        throw Error(ErrorCode::InvalidK, "k = " + std::to_string(k) + " outside [1, " +
                                             std::to_string(ranked.order.size()) + "]");
    }
    return {ranked.order.begin(), ranked.order.begin() + static_cast<long>(k)};
}

void to_json(nlohmann::json& j, const RankedFeatures& r) {
    j = nlohmann::json{{"method", to_string(r.method)}, {"scores", r.scores}, {"order", r.order}};
}

}  // namespace hcvr
