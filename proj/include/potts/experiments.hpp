#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "potts/signals.hpp"
#include "potts/types.hpp"

namespace potts {

// One wall-clock measurement: median over reps of solving a noisy canonical
// signal of length n with the given method.
struct BenchRecord {
    int n = 0;
    std::string method; // "l1potts" or "l2potts"
    double seconds = 0.0;
    int reps = 0;
};

// Sequential timing with monotonic clocks; one warm-up rep is discarded and
// the median of the remaining reps is reported.
std::vector<BenchRecord> runtime_scaling(const std::vector<int>& sizes, int reps,
                                         std::uint64_t seed);

// least-squares slope of log(seconds) against log(n) for one method
double loglog_slope(const std::vector<BenchRecord>& records, const std::string& method);

struct ComparisonRow {
    NoiseKind noise = NoiseKind::none;
    double sigma = 0.0;
    double frac = 0.0;
    std::string method;
    double gamma = 0.0;
    std::uint64_t seed = 0;
    int jump_err = 0;   // |J(u) - J(truth)|
    int max_offset = 0; // JumpSetDistance::kOffsetUndefined when counts differ
    double l1_err = 0.0;
};

// Denoising comparison on the canonical signal: every (noise case, method,
// gamma, seed) combination yields one row.
std::vector<ComparisonRow> method_comparison(const std::vector<NoiseSpec>& noise_suite,
                                             const std::vector<double>& gamma_grid,
                                             int seeds, int n = 256);

// fraction of rows with jump_err == 0 for the given method/gamma
double success_rate(const std::vector<ComparisonRow>& rows, NoiseKind noise,
                    const std::string& method, double gamma);

struct ConvergenceRow {
    int level = 0;
    int n = 0;
    double potts_value = 0.0;
    double l1_dist_to_finest = 0.0;
};

// Nested-grid study: the canonical truth is corrupted once on a fine uniform
// grid, integral-sampled onto refinement_grid(0..levels-1), and solved with
// interval-length weights. Distances are continuous L1 distances between the
// minimizers, expanded onto the finest level.
std::vector<ConvergenceRow> convergence_study(int levels, std::uint64_t seed,
                                              double gamma = 0.01, double sigma = 0.05);

void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records);
void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows);
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

const char* noise_kind_name(NoiseKind kind);

} // namespace potts
