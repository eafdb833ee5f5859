#include "potts/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace potts {

WeightedSignal::WeightedSignal(std::vector<double> v, std::vector<double> w)
    : values(std::move(v)), weights(std::move(w)) {
    if (values.empty())
        throw std::invalid_argument("WeightedSignal: empty signal");
    if (values.size() != weights.size())
        throw std::invalid_argument("WeightedSignal: values/weights length mismatch");
    for (double wi : weights)
        if (!(wi > 0.0))
            throw std::invalid_argument("WeightedSignal: weights must be positive");
}

WeightedSignal WeightedSignal::uniform(std::vector<double> v) {
    std::vector<double> w(v.size(), 1.0);
    return WeightedSignal(std::move(v), std::move(w));
}

double WeightedSignal::total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double WeightedSignal::weight_ratio() const {
    auto [lo, hi] = std::minmax_element(weights.begin(), weights.end());
    return *hi / *lo;
}

StepSignal::StepSignal(std::vector<int> boundaries, std::vector<double> levels)
    : boundaries_(std::move(boundaries)), levels_(std::move(levels)) {
    if (boundaries_.size() < 2 || boundaries_.front() != 0)
        throw std::invalid_argument("StepSignal: boundaries must start at 0");
    if (boundaries_.size() != levels_.size() + 1)
        throw std::invalid_argument("StepSignal: need one level per segment");
    for (std::size_t i = 1; i < boundaries_.size(); ++i)
        if (boundaries_[i] <= boundaries_[i - 1])
            throw std::invalid_argument("StepSignal: boundaries must be strictly increasing");
}

StepSignal StepSignal::constant(double level, int n) {
    if (n < 1) throw std::invalid_argument("StepSignal: n must be >= 1");
    return StepSignal({0, n}, {level});
}

StepSignal StepSignal::from_samples(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("StepSignal: empty samples");
    std::vector<int> bounds{0};
    std::vector<double> levels;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (levels.empty() || samples[i] != levels.back()) {
            if (!levels.empty()) bounds.push_back(static_cast<int>(i));
            levels.push_back(samples[i]);
        }
    }
    bounds.push_back(static_cast<int>(samples.size()));
    return StepSignal(std::move(bounds), std::move(levels));
}

int StepSignal::jump_count() const {
    int j = 0;
    for (std::size_t i = 1; i < levels_.size(); ++i)
        if (levels_[i] != levels_[i - 1]) ++j;
    return j;
}

std::vector<int> StepSignal::jump_locations() const {
    std::vector<int> locs;
    for (std::size_t i = 1; i < levels_.size(); ++i)
        if (levels_[i] != levels_[i - 1]) locs.push_back(boundaries_[i]);
    return locs;
}

std::vector<double> StepSignal::expand() const {
    std::vector<double> out(static_cast<std::size_t>(sample_count()));
    for (std::size_t s = 0; s < levels_.size(); ++s)
        for (int i = boundaries_[s]; i < boundaries_[s + 1]; ++i)
            out[static_cast<std::size_t>(i)] = levels_[s];
    return out;
}

StepSignal StepSignal::canonical() const {
    std::vector<int> bounds{0};
    std::vector<double> levels;
    for (std::size_t s = 0; s < levels_.size(); ++s) {
        if (levels.empty() || levels_[s] != levels.back()) {
            if (!levels.empty()) bounds.push_back(boundaries_[s]);
            levels.push_back(levels_[s]);
        }
    }
    bounds.push_back(boundaries_.back());
    return StepSignal(std::move(bounds), std::move(levels));
}

PottsParams::PottsParams(double g) : gamma(g) {
    if (!(gamma > 0.0)) throw std::invalid_argument("PottsParams: gamma must be positive");
}

void Partition::validate_chain() const {
    const int n = size();
    if (n < 1 || B.size() != p.size())
        throw std::invalid_argument("Partition: inconsistent sizes");
    int r = n;
    int steps = 0;
    while (r > 0) {
        if (p[static_cast<std::size_t>(r)] < 0 || p[static_cast<std::size_t>(r)] >= r || ++steps > n)
            throw std::invalid_argument("Partition: invalid predecessor chain");
        r = p[static_cast<std::size_t>(r)];
    }
}

namespace {

// walks u's segments against f without materializing the expanded vector
template <typename PerSample>
void for_each_sample(const StepSignal& u, std::size_t n, PerSample&& fn) {
    if (static_cast<std::size_t>(u.sample_count()) != n)
        throw std::invalid_argument("step signal does not cover the given samples");
    const auto& bounds = u.boundaries();
    const auto& levels = u.levels();
    for (std::size_t s = 0; s < levels.size(); ++s)
        for (int i = bounds[s]; i < bounds[s + 1]; ++i)
            fn(static_cast<std::size_t>(i), levels[s]);
}

} // namespace

double potts_energy_l1(const StepSignal& u, const WeightedSignal& f, const PottsParams& params) {
    double data = 0.0;
    for_each_sample(u, f.size(), [&](std::size_t i, double level) {
        data += f.weights[i] * std::abs(level - f.values[i]);
    });
    return params.gamma * u.jump_count() + data;
}

double potts_energy_l2(const StepSignal& u, const WeightedSignal& f, const PottsParams& params) {
    double data = 0.0;
    for_each_sample(u, f.size(), [&](std::size_t i, double level) {
        const double r = level - f.values[i];
        data += f.weights[i] * r * r;
    });
    return params.gamma * u.jump_count() + data;
}

double l1_distance(const StepSignal& u, const StepSignal& v, std::span<const double> weights) {
    if (u.sample_count() != v.sample_count())
        throw std::invalid_argument("l1_distance: signals cover different grids");
    if (weights.size() != static_cast<std::size_t>(u.sample_count()))
        throw std::invalid_argument("l1_distance: weight length mismatch");
    const auto ue = u.expand();
    const auto ve = v.expand();
    double s = 0.0;
    for (std::size_t i = 0; i < ue.size(); ++i) s += weights[i] * std::abs(ue[i] - ve[i]);
    return s;
}

JumpSetDistance jump_set_distance(const StepSignal& u, const StepSignal& v) {
    const auto ju = u.jump_locations();
    const auto jv = v.jump_locations();
    JumpSetDistance d;
    d.count_diff = std::abs(static_cast<int>(ju.size()) - static_cast<int>(jv.size()));
    if (d.count_diff != 0) {
        d.max_offset = JumpSetDistance::kOffsetUndefined;
        return d;
    }
    d.max_offset = 0;
    for (std::size_t i = 0; i < ju.size(); ++i)
        d.max_offset = std::max(d.max_offset, std::abs(ju[i] - jv[i]));
    return d;
}

} // namespace potts
