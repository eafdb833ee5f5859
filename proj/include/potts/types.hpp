#pragma once

#include <span>
#include <vector>

namespace potts {

// Discrete signal samples with strictly positive per-sample weights.
// Unit weights give the plain (unweighted) functionals; weights equal to
// interval lengths connect the discrete functional to a non-uniform grid.
struct WeightedSignal {
    std::vector<double> values;
    std::vector<double> weights;

    WeightedSignal(std::vector<double> v, std::vector<double> w);
    static WeightedSignal uniform(std::vector<double> v);

    std::size_t size() const { return values.size(); }
    double total_weight() const;
    double weight_ratio() const; // max weight / min weight
};

// Piecewise constant signal over sample indices.
// boundaries = 0 = b_0 < b_1 < ... < b_m = n; segment i covers samples
// [b_{i-1}, b_i); levels holds one value per segment. Adjacent segments may
// share a level; canonical() merges them so that jump_count() equals the
// number of segments minus one.
class StepSignal {
public:
    StepSignal(std::vector<int> boundaries, std::vector<double> levels);

    static StepSignal constant(double level, int n);
    static StepSignal from_samples(std::span<const double> samples); // canonical runs

    int sample_count() const { return boundaries_.back(); }
    int segment_count() const { return static_cast<int>(levels_.size()); }
    int jump_count() const;
    std::vector<int> jump_locations() const; // interior boundaries with a level change

    const std::vector<int>& boundaries() const { return boundaries_; }
    const std::vector<double>& levels() const { return levels_; }

    std::vector<double> expand() const; // sample-wise values, length n
    StepSignal canonical() const;

    bool operator==(const StepSignal& o) const = default;

private:
    std::vector<int> boundaries_;
    std::vector<double> levels_;
};

struct PottsParams {
    double gamma;
    explicit PottsParams(double g);
};

// Output of the partition search: predecessor boundaries and prefix energies.
// p[r] (1 <= r <= n) is the rightmost boundary before r in an optimal
// segmentation of the first r samples, p[r] < r. B[r] is the optimal prefix
// energy with the convention B[0] = -gamma (the first segment pays no jump).
struct Partition {
    std::vector<int> p;    // length n+1, p[0] unused (= 0)
    std::vector<double> B; // length n+1

    int size() const { return static_cast<int>(p.size()) - 1; }
    void validate_chain() const; // throws if following p from n does not reach 0
};

// gamma * J(u) + sum_i w_i |u_i - f_i|
double potts_energy_l1(const StepSignal& u, const WeightedSignal& f, const PottsParams& params);

// gamma * J(u) + sum_i w_i (u_i - f_i)^2
double potts_energy_l2(const StepSignal& u, const WeightedSignal& f, const PottsParams& params);

// sum_i weights_i |u_i - v_i| over a common grid
double l1_distance(const StepSignal& u, const StepSignal& v, std::span<const double> weights);

// Difference between the jump sets of two step signals. When both have the
// same number of jumps, max_offset is the largest index distance between
// paired jump locations; otherwise it is kOffsetUndefined.
struct JumpSetDistance {
    static constexpr int kOffsetUndefined = -1;
    int count_diff = 0;
    int max_offset = 0;
};

JumpSetDistance jump_set_distance(const StepSignal& u, const StepSignal& v);

} // namespace potts
