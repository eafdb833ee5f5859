#include "potts/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace potts::oracle {

namespace {

// cost of the best constant fit on samples [lo, hi), plus that constant
std::pair<double, double> segment_fit(const WeightedSignal& f, int lo, int hi, Norm norm) {
    const int len = hi - lo;
    if (norm == Norm::L2) {
        double sw = 0.0, swf = 0.0;
        for (int i = lo; i < hi; ++i) {
            sw += f.weights[i];
            swf += f.weights[i] * f.values[i];
        }
        const double mean = swf / sw;
        double cost = 0.0;
        for (int i = lo; i < hi; ++i) {
            const double r = f.values[i] - mean;
            cost += f.weights[i] * r * r;
        }
        return {cost, mean};
    }
    std::vector<std::pair<double, double>> vw(static_cast<std::size_t>(len));
    for (int i = lo; i < hi; ++i)
        vw[static_cast<std::size_t>(i - lo)] = {f.values[i], f.weights[i]};
    std::sort(vw.begin(), vw.end());
    double wtot = 0.0;
    for (const auto& [v, w] : vw) wtot += w;
    double cum = 0.0;
    double med = vw.back().first;
    for (const auto& [v, w] : vw) {
        cum += w;
        if (cum >= 0.5 * wtot) {
            med = v;
            break;
        }
    }
    double cost = 0.0;
    for (const auto& [v, w] : vw) cost += w * std::abs(v - med);
    return {cost, med};
}

} // namespace

std::pair<StepSignal, double> enumerate_exact(const WeightedSignal& f, double gamma, Norm norm) {
    const int n = static_cast<int>(f.size());
    if (n > 16) throw std::invalid_argument("enumerate_exact: n must be <= 16");
    if (!(gamma > 0.0)) throw std::invalid_argument("enumerate_exact: gamma must be positive");

    double best_energy = std::numeric_limits<double>::infinity();
    std::vector<int> best_bounds;
    std::vector<double> best_levels;

    const std::uint32_t masks = n >= 1 ? (1u << (n - 1)) : 1u;
    std::vector<int> bounds;
    std::vector<double> levels;
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        bounds.clear();
        levels.clear();
        bounds.push_back(0);
        double energy = 0.0;
        int lo = 0;
        for (int i = 0; i < n; ++i) {
            const bool cut_after = (i == n - 1) || (mask & (1u << i));
            if (!cut_after) continue;
            const auto [cost, level] = segment_fit(f, lo, i + 1, norm);
            energy += cost;
            bounds.push_back(i + 1);
            levels.push_back(level);
            lo = i + 1;
        }
        energy += gamma * static_cast<double>(levels.size() - 1);
        if (energy < best_energy ||
            (energy == best_energy &&
             std::lexicographical_compare(bounds.begin() + 1, bounds.end() - 1,
                                          best_bounds.begin() + 1, best_bounds.end() - 1))) {
            best_energy = energy;
            best_bounds = bounds;
            best_levels = levels;
        }
    }
    return {StepSignal(std::move(best_bounds), std::move(best_levels)).canonical(), best_energy};
}

std::pair<Partition, double> naive_dp(const WeightedSignal& f, double gamma) {
    const int n = static_cast<int>(f.size());
    if (!(gamma > 0.0)) throw std::invalid_argument("naive_dp: gamma must be positive");

    Partition out;
    out.p.assign(static_cast<std::size_t>(n) + 1, 0);
    out.B.assign(static_cast<std::size_t>(n) + 1, 0.0);
    out.B[0] = -gamma;

    // sorted (value, weight) pairs of the current window, grown at the front
    std::vector<std::pair<double, double>> window;
    for (int r = 1; r <= n; ++r) {
        window.clear();
        window.reserve(static_cast<std::size_t>(r));
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        double wtot = 0.0;
        for (int l = r; l >= 1; --l) {
            const std::pair<double, double> vw{f.values[l - 1], f.weights[l - 1]};
            window.insert(std::upper_bound(window.begin(), window.end(), vw), vw);
            wtot += vw.second;

            double cum = 0.0;
            double med = window.back().first;
            for (const auto& [v, w] : window) {
                cum += w;
                if (cum >= 0.5 * wtot) {
                    med = v;
                    break;
                }
            }
            double dev = 0.0;
            for (const auto& [v, w] : window) dev += w * std::abs(v - med);

            const double b = out.B[l - 1] + gamma + dev;
            // same tie rule as the fast solver: larger l wins, so scanning
            // downward in l must use strict improvement
            if (b < best) {
                best = b;
                arg = l - 1;
            }
        }
        out.B[r] = best;
        out.p[r] = arg;
    }
    return {out, out.B[static_cast<std::size_t>(n)]};
}

void write_fixture(std::ostream& os, const WeightedSignal& f, double gamma,
                   const Partition& partition, double energy) {
    os.precision(17);
    os << "# weighted L1-Potts regression fixture\n";
    os << "# gamma=" << gamma << " energy=" << energy << "\n";
    os << "i,f,w,p,B\n";
    os << ",,,0," << partition.B[0] << "\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        os << (i + 1) << ',' << f.values[i] << ',' << f.weights[i] << ','
           << partition.p[i + 1] << ',' << partition.B[i + 1] << "\n";
}

} // namespace potts::oracle
