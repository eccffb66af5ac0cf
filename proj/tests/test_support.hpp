#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "hcvr/dataset.hpp"

namespace hcvr::testing {

inline std::filesystem::path spambase_path() { return HCVR_SPAMBASE_PATH; }

inline Dataset load_spambase() { return load_csv(spambase_path(), -1L, false); }

inline std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("f" + std::to_string(i));
    return names;
}

/// Gaussian features, some mixed with the label so correlations are spread over [-1, 1].
inline Dataset random_dataset(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    std::vector<int> target(rows);
    for (auto& t : target) t = coin(rng) ? 1 : 0;
    if (rows >= 2) {
        target[0] = 0;
        target[1] = 1;
    }
    std::vector<double> weights(cols);
    std::uniform_real_distribution<double> w(-2.0, 2.0);
    for (auto& x : weights) x = w(rng);
    std::vector<double> features(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const double shared = noise(rng);
        for (std::size_t c = 0; c < cols; ++c) {
            features[r * cols + c] =
                weights[c] * target[r] + 0.5 * (c % 2 == 0 ? shared : -shared) + noise(rng);
        }
    }
    return {std::move(features), std::move(target), default_names(cols)};
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("hcvr-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace hcvr::testing
