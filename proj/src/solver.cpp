#include "potts/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "potts/indexed_histogram.hpp"

namespace potts {

MomentTables::MomentTables(const WeightedSignal& f) {
    const std::size_t n = f.size();
    w.assign(n + 1, 0.0);
    wf.assign(n + 1, 0.0);
    wf2.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        w[i + 1] = w[i] + f.weights[i];
        wf[i + 1] = wf[i] + f.weights[i] * f.values[i];
        wf2[i + 1] = wf2[i] + f.weights[i] * f.values[i] * f.values[i];
    }
}

Partition find_best_partition_l1(const WeightedSignal& f, double gamma, SolveStats* stats) {
    PottsParams params(gamma);
    const int n = static_cast<int>(f.size());

    Partition out;
    out.p.assign(static_cast<std::size_t>(n) + 1, 0);
    out.B.assign(static_cast<std::size_t>(n) + 1, 0.0);
    out.B[0] = -gamma;

    const auto t0 = std::chrono::steady_clock::now();
    IndexedLinkedHistogram hist(f.size());
    for (int r = 1; r <= n; ++r) {
        hist.insert_element(f.values[r - 1], f.weights[r - 1]);
        hist.reset_temporary();

        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        // d starts as the deviation of the whole prefix: the l = 1 candidate
        // is the single-segment fit, and B_0 = -gamma cancels its jump term.
        double d = hist.current_deviation();
        for (int l = 1; l <= r; ++l) {
            const double b = out.B[l - 1] + gamma + d;
            if (b <= best) {
                best = b;
                arg = l - 1;
            }
            hist.remove_element_temp(static_cast<std::size_t>(l - 1), f.weights[l - 1]);
            d = hist.current_deviation();
        }
        out.B[r] = best;
        out.p[r] = arg;
    }
    if (stats) {
        stats->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        stats->max_shifts_per_removal = hist.max_shift_count();
        stats->peak_nodes = hist.node_count();
    }
    return out;
}

double weighted_median(std::span<const double> values, std::span<const double> weights) {
    if (values.empty() || values.size() != weights.size())
        throw std::invalid_argument("weighted_median: bad input");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    double wtot = 0.0;
    for (double w : weights) wtot += w;
    const double half = 0.5 * wtot;
    double cum = 0.0;
    for (std::size_t k : order) {
        cum += weights[k];
        if (cum >= half) return values[k];
    }
    return values[order.back()];
}

namespace {

template <typename LevelOf>
StepSignal reconstruct(const Partition& partition, const WeightedSignal& f, LevelOf&& level_of) {
    partition.validate_chain();
    const int n = partition.size();
    if (static_cast<std::size_t>(n) != f.size())
        throw std::invalid_argument("reconstruct: partition does not match signal length");

    std::vector<int> bounds;
    std::vector<double> levels;
    int r = n;
    while (r > 0) {
        const int l = partition.p[static_cast<std::size_t>(r)];
        bounds.push_back(r);
        levels.push_back(level_of(l + 1, r)); // samples l+1..r, 1-based
        r = l;
    }
    bounds.push_back(0);
    std::reverse(bounds.begin(), bounds.end());
    std::reverse(levels.begin(), levels.end());
    return StepSignal(std::move(bounds), std::move(levels)).canonical();
}

} // namespace

StepSignal reconstruct_from_partition_l1(const Partition& partition, const WeightedSignal& f) {
    return reconstruct(partition, f, [&](int l, int r) {
        return weighted_median(
            std::span<const double>(f.values).subspan(static_cast<std::size_t>(l - 1),
                                                      static_cast<std::size_t>(r - l + 1)),
            std::span<const double>(f.weights).subspan(static_cast<std::size_t>(l - 1),
                                                       static_cast<std::size_t>(r - l + 1)));
    });
}

StepSignal min_l1_potts(const WeightedSignal& f, double gamma, SolveStats* stats) {
    const Partition p = find_best_partition_l1(f, gamma, stats);
    return reconstruct_from_partition_l1(p, f);
}

Partition find_best_partition_l2(const WeightedSignal& f, double gamma) {
    PottsParams params(gamma);
    const int n = static_cast<int>(f.size());
    const MomentTables m(f);

    Partition out;
    out.p.assign(static_cast<std::size_t>(n) + 1, 0);
    out.B.assign(static_cast<std::size_t>(n) + 1, 0.0);
    out.B[0] = -gamma;

    for (int r = 1; r <= n; ++r) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (int l = 1; l <= r; ++l) {
            const double b = out.B[l - 1] + gamma + m.sse(l, r);
            if (b <= best) {
                best = b;
                arg = l - 1;
            }
        }
        out.B[r] = best;
        out.p[r] = arg;
    }
    return out;
}

StepSignal min_l2_potts(const WeightedSignal& f, double gamma) {
    const Partition p = find_best_partition_l2(f, gamma);
    const MomentTables m(f);
    return reconstruct(p, f, [&](int l, int r) { return m.mean(l, r); });
}

} // namespace potts
