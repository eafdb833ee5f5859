#include "potts/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "potts/rng.hpp"
#include "potts/solver.hpp"

namespace potts {

namespace {

std::vector<double> noisy_canonical(int n, std::uint64_t seed) {
    NoiseSpec spec;
    spec.kind = NoiseKind::laplacian;
    spec.sigma = 0.1;
    spec.seed = seed;
    return add_noise(canonical_step_signal(n).expand(), spec);
}

double time_solve(const WeightedSignal& f, const std::string& method, double gamma) {
    const auto t0 = std::chrono::steady_clock::now();
    if (method == "l1potts")
        min_l1_potts(f, gamma);
    else
        min_l2_potts(f, gamma);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

std::vector<BenchRecord> runtime_scaling(const std::vector<int>& sizes, int reps,
                                         std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("runtime_scaling: reps must be >= 1");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw std::invalid_argument("runtime_scaling: sizes must be ascending");

    std::vector<BenchRecord> out;
    for (const char* method : {"l1potts", "l2potts"}) {
        for (std::size_t si = 0; si < sizes.size(); ++si) {
            const int n = sizes[si];
            std::vector<double> times;
            for (int rep = -1; rep < reps; ++rep) {
                const auto f = WeightedSignal::uniform(
                    noisy_canonical(n, seed + 7919ULL * static_cast<std::uint64_t>(rep + 1) +
                                           131ULL * static_cast<std::uint64_t>(si)));
                const double t = time_solve(f, method, 1.0);
                if (rep >= 0) times.push_back(t); // first rep is warm-up
            }
            std::sort(times.begin(), times.end());
            out.push_back(BenchRecord{n, method, times[times.size() / 2], reps});
        }
    }
    return out;
}

double loglog_slope(const std::vector<BenchRecord>& records, const std::string& method) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (const auto& r : records) {
        if (r.method != method) continue;
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(r.seconds);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw std::invalid_argument("loglog_slope: need at least two sizes");
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

std::vector<ComparisonRow> method_comparison(const std::vector<NoiseSpec>& noise_suite,
                                             const std::vector<double>& gamma_grid,
                                             int seeds, int n) {
    const StepSignal truth = canonical_step_signal(n);
    const auto truth_samples = truth.expand();
    const std::vector<double> unit(truth_samples.size(), 1.0);

    std::vector<ComparisonRow> rows;
    for (std::size_t ci = 0; ci < noise_suite.size(); ++ci) {
        for (int seed = 0; seed < seeds; ++seed) {
            NoiseSpec spec = noise_suite[ci];
            spec.seed = Rng::derive(static_cast<std::uint64_t>(seed), ci).next_u64();
            const auto f = WeightedSignal::uniform(add_noise(truth_samples, spec));
            for (double gamma : gamma_grid) {
                for (const char* method : {"l1potts", "l2potts"}) {
                    const StepSignal u = method == std::string("l1potts")
                                             ? min_l1_potts(f, gamma)
                                             : min_l2_potts(f, gamma);
                    const auto dist = jump_set_distance(u, truth);
                    ComparisonRow row;
                    row.noise = spec.kind;
                    row.sigma = spec.sigma;
                    row.frac = spec.frac;
                    row.method = method;
                    row.gamma = gamma;
                    row.seed = static_cast<std::uint64_t>(seed);
                    row.jump_err = dist.count_diff;
                    row.max_offset = dist.max_offset;
                    row.l1_err = l1_distance(u, truth, unit) / static_cast<double>(n);
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

double success_rate(const std::vector<ComparisonRow>& rows, NoiseKind noise,
                    const std::string& method, double gamma) {
    int total = 0;
    int hit = 0;
    for (const auto& r : rows) {
        if (r.noise != noise || r.method != method || r.gamma != gamma) continue;
        ++total;
        if (r.jump_err == 0) ++hit;
    }
    if (total == 0) throw std::invalid_argument("success_rate: no matching rows");
    return static_cast<double>(hit) / total;
}

namespace {

// values of a step signal over grid `from`, evaluated per interval of `to`
std::vector<double> expand_onto(const StepSignal& u, const Grid& from, const Grid& to) {
    std::vector<double> out(to.interval_count());
    const auto levels = u.expand(); // per interval of `from`
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double mid = 0.5 * (to.points[j] + to.points[j + 1]);
        const auto it = std::upper_bound(from.points.begin(), from.points.end(), mid);
        const auto idx = static_cast<std::size_t>(it - from.points.begin()) - 1;
        out[j] = levels[std::min(idx, levels.size() - 1)];
    }
    return out;
}

} // namespace

std::vector<ConvergenceRow> convergence_study(int levels, std::uint64_t seed,
                                              double gamma, double sigma) {
    if (levels < 1) throw std::invalid_argument("convergence_study: levels must be >= 1");

    const int finest = levels - 1;
    const Grid finest_grid = refinement_grid(finest);
    // fine carrier grid: 16x the finest level, dyadic so every level aligns
    const int fine_n = static_cast<int>(finest_grid.interval_count()) * 32;
    NoiseSpec spec;
    spec.kind = NoiseKind::laplacian;
    spec.sigma = sigma;
    spec.seed = seed;
    const auto f_fine = add_noise(canonical_step_signal(fine_n).expand(), spec);

    std::vector<StepSignal> minimizers;
    std::vector<double> potts_values;
    for (int k = 0; k < levels; ++k) {
        const Grid grid = refinement_grid(k);
        const WeightedSignal fk = sample_integral(f_fine, grid);
        const StepSignal uk = min_l1_potts(fk, gamma);
        minimizers.push_back(uk);
        potts_values.push_back(potts_energy_l1(uk, fk, PottsParams(gamma)));
    }

    const auto u_fine = expand_onto(minimizers.back(), finest_grid, finest_grid);
    const auto fine_lengths = finest_grid.interval_lengths();
    std::vector<ConvergenceRow> rows;
    for (int k = 0; k < levels; ++k) {
        const Grid grid = refinement_grid(k);
        const auto uk = expand_onto(minimizers[static_cast<std::size_t>(k)], grid, finest_grid);
        double dist = 0.0;
        for (std::size_t j = 0; j < uk.size(); ++j)
            dist += fine_lengths[j] * std::abs(uk[j] - u_fine[j]);
        rows.push_back(ConvergenceRow{k, static_cast<int>(grid.interval_count()),
                                      potts_values[static_cast<std::size_t>(k)], dist});
    }
    return rows;
}

const char* noise_kind_name(NoiseKind kind) {
    switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::gaussian: return "gauss";
    case NoiseKind::laplacian: return "laplace";
    case NoiseKind::salt_pepper: return "saltpepper";
    }
    return "unknown";
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
    os.precision(17);
    os << "n,method,seconds,reps\n";
    for (const auto& r : records)
        os << r.n << ',' << r.method << ',' << r.seconds << ',' << r.reps << '\n';
}

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
    os.precision(17);
    os << "noise,sigma,frac,method,gamma,seed,jump_err,max_offset,l1_err\n";
    for (const auto& r : rows)
        os << noise_kind_name(r.noise) << ',' << r.sigma << ',' << r.frac << ',' << r.method
           << ',' << r.gamma << ',' << r.seed << ',' << r.jump_err << ',' << r.max_offset
           << ',' << r.l1_err << '\n';
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os.precision(17);
    os << "level,n,potts_value,l1_dist_to_finest\n";
    for (const auto& r : rows)
        os << r.level << ',' << r.n << ',' << r.potts_value << ',' << r.l1_dist_to_finest << '\n';
}

} // namespace potts
