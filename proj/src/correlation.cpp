#include "hcvr/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "hcvr/error.hpp"

namespace hcvr {

Threshold::Threshold(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw Error(ErrorCode::InvalidThreshold,
                    "threshold " + std::to_string(value) + " outside [0, 1]");
    }
}

CorrelationClass classify(double rho, Threshold theta) {
    return std::abs(rho) >= theta.value() ? CorrelationClass::High : CorrelationClass::Low;
}

namespace {

bool is_constant(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

double clamp_unit(double r) { return std::clamp(r, -1.0, 1.0); }

/// Centered and scaled to unit norm; all zeros for a constant column.
std::vector<double> unit_deviations(std::span<const double> x) {
    std::vector<double> z(x.size(), 0.0);
    if (is_constant(x)) return z;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        z[i] = x[i] - mean;
        ss += z[i] * z[i];
    }
    const double norm = std::sqrt(ss);
    for (double& v : z) v /= norm;
    return z;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::LengthMismatch, "pearson inputs have lengths " +
                                                   std::to_string(x.size()) + " and " +
                                                   std::to_string(y.size()));
    }
    if (x.size() < 2) throw Error(ErrorCode::TooFewSamples, "pearson needs at least 2 samples");
    if (is_constant(x) || is_constant(y)) return 0.0;

    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return clamp_unit(sxy / std::sqrt(sxx * syy));
}

CorrelationProfile build_profile(const Dataset& d) {
    if (d.n_rows() < 2) throw Error(ErrorCode::TooFewSamples, "profile needs at least 2 rows");
    const std::size_t n = d.n_cols();

    std::vector<std::vector<double>> z;
    z.reserve(n);
    std::vector<bool> constant(n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto col = d.column(c);
        constant[c] = is_constant(col);
        z.push_back(unit_deviations(col));
    }
    const auto zt = unit_deviations(d.target_as_real());

    CorrelationProfile p{n, std::vector<double>(n * n, 0.0), std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        p.p2p[i * n + i] = constant[i] ? 0.0 : 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = clamp_unit(dot(z[i], z[j]));
            p.p2p[i * n + j] = r;
            p.p2p[j * n + i] = r;
        }
        p.p2t[i] = clamp_unit(dot(z[i], zt));
    }
    return p;
}

CorrelationProfile make_profile(std::vector<double> p2p, std::vector<double> p2t) {
    const std::size_t n = p2t.size();
    if (p2p.size() != n * n) {
        throw Error(ErrorCode::LengthMismatch, "p2p must be " + std::to_string(n) + " x " +
                                                   std::to_string(n));
    }
    auto bounded = [](double v) { return std::isfinite(v) && std::abs(v) <= 1.0 + 1e-12; };
    for (std::size_t i = 0; i < n; ++i) {
        if (!bounded(p2t[i])) throw Error(ErrorCode::InvalidRange, "p2t entry out of [-1, 1]");
        for (std::size_t j = 0; j < n; ++j) {
            if (!bounded(p2p[i * n + j])) {
                throw Error(ErrorCode::InvalidRange, "p2p entry out of [-1, 1]");
            }
            if (p2p[i * n + j] != p2p[j * n + i]) {
                throw Error(ErrorCode::InvalidRange, "p2p is not symmetric");
            }
        }
    }
    return {n, std::move(p2p), std::move(p2t)};
}

void to_json(nlohmann::json& j, const CorrelationProfile& p) {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < p.n; ++i) {
        rows.push_back(std::vector<double>(p.p2p.begin() + static_cast<long>(i * p.n),
                                           p.p2p.begin() + static_cast<long>((i + 1) * p.n)));
    }
    j = nlohmann::json{{"p2p", std::move(rows)}, {"p2t", p.p2t}};
}

void from_json(const nlohmann::json& j, CorrelationProfile& p) {
    std::vector<double> flat;
    for (const auto& row : j.at("p2p")) {
        for (const auto& v : row) flat.push_back(v.get<double>());
    }
    p = make_profile(std::move(flat), j.at("p2t").get<std::vector<double>>());
}

ProfileCache::ProfileCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::optional<ProfileCache> ProfileCache::from_env() {
    const char* dir = std::getenv("HCVR_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return ProfileCache(dir);
}

std::filesystem::path ProfileCache::entry_path(const std::string& dataset_hash,
                                               std::uint64_t seed) const {
    return dir_ / ("profile-" + dataset_hash + "-" + std::to_string(seed) + ".json");
}

CorrelationProfile ProfileCache::load_or_build(const Dataset& d, std::uint64_t seed) const {
    const auto path = entry_path(content_hash(d), seed);
    if (std::ifstream in(path); in) {
        try {
            CorrelationProfile cached = nlohmann::json::parse(in).get<CorrelationProfile>();
            if (cached.n == d.n_cols()) return cached;
        } catch (const std::exception&) {
            // corrupt entry: rebuild and overwrite
        }
    }
    CorrelationProfile profile = build_profile(d);
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (std::ofstream out(path); out) out << nlohmann::json(profile).dump();
    return profile;
}

}  // namespace hcvr
