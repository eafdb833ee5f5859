#pragma once

#include <cmath>
#include <vector>

#include "potts/rng.hpp"
#include "potts/types.hpp"

namespace testutil {

inline bool approx_rel(double a, double b, double rel = 1e-9, double abs = 1e-12) {
    return std::abs(a - b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

// Random instance with values that repeat often enough to exercise shared
// histogram nodes and median ties.
inline potts::WeightedSignal random_signal(potts::Rng& rng, int n, double weight_ratio = 1.0) {
    std::vector<double> values(static_cast<std::size_t>(n));
    std::vector<double> weights(static_cast<std::size_t>(n));
    for (auto& v : values) {
        if (rng.uniform01() < 0.3)
            v = 0.25 * static_cast<double>(rng.uniform_int(0, 4)); // small alphabet
        else
            v = rng.uniform01();
    }
    for (auto& w : weights)
        w = weight_ratio <= 1.0 ? 1.0 : rng.uniform(1.0, weight_ratio);
    return potts::WeightedSignal(std::move(values), std::move(weights));
}

} // namespace testutil
