#pragma once

#include <cstdint>
#include <span>

#include "potts/types.hpp"

namespace potts {

// Cumulative sums of w, w*f and w*f^2 (entry 0 is zero). Gives the weighted
// least-squares error of the best constant on any index range in O(1).
struct MomentTables {
    std::vector<double> w, wf, wf2;

    explicit MomentTables(const WeightedSignal& f);

    // samples l..r, 1-based inclusive
    double sum_w(int l, int r) const { return w[r] - w[l - 1]; }
    double mean(int l, int r) const { return (wf[r] - wf[l - 1]) / sum_w(l, r); }
    double sse(int l, int r) const {
        const double sw = sum_w(l, r);
        const double swf = wf[r] - wf[l - 1];
        const double e = (wf2[r] - wf2[l - 1]) - swf * swf / sw;
        return e > 0.0 ? e : 0.0;
    }
};

// Per-solve instrumentation (complexity witnesses and timing).
struct SolveStats {
    std::uint64_t max_shifts_per_removal = 0;
    std::size_t peak_nodes = 0;
    double seconds = 0.0;
};

// Dynamic program over prefixes: B_r = min_l B_{l-1} + gamma + d_[l,r] with
// d_[l,r] the weighted absolute deviation from a median of samples l..r,
// maintained by the indexed linked histogram. O(n^2) time, O(n) space for
// bounded weight ratios. Ties resolve toward the larger l.
Partition find_best_partition_l1(const WeightedSignal& f, double gamma,
                                 SolveStats* stats = nullptr);

// Walks the predecessor chain and sets each segment to the weighted median
// of its samples (lowest valid median on ties). Output is canonical.
StepSignal reconstruct_from_partition_l1(const Partition& partition, const WeightedSignal& f);

// Exact minimizer of gamma * J(u) + sum_i w_i |u_i - f_i|.
StepSignal min_l1_potts(const WeightedSignal& f, double gamma, SolveStats* stats = nullptr);

// Exact minimizer of gamma * J(u) + sum_i w_i (u_i - f_i)^2, same DP skeleton
// with moment tables; segment values are weighted means.
StepSignal min_l2_potts(const WeightedSignal& f, double gamma);

Partition find_best_partition_l2(const WeightedSignal& f, double gamma);

// Lowest value m such that the weight strictly below and strictly above m are
// both at most half of the total. Sort-based; used for reconstruction.
double weighted_median(std::span<const double> values, std::span<const double> weights);

} // namespace potts
