#include "potts/signals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "potts/rng.hpp"

namespace potts {

void NoiseSpec::validate() const {
    if (sigma < 0.0) throw std::invalid_argument("NoiseSpec: sigma must be nonnegative");
    if (frac < 0.0 || frac > 1.0) throw std::invalid_argument("NoiseSpec: frac must be in [0,1]");
}

Grid::Grid(std::vector<double> pts) : points(std::move(pts)) {
    if (points.size() < 2) throw std::invalid_argument("Grid: need at least two points");
    if (points.front() < 0.0 || points.back() > 1.0)
        throw std::invalid_argument("Grid: points must lie in [0,1]");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i] > points[i - 1]))
            throw std::invalid_argument("Grid: points must be strictly increasing");
}

Grid Grid::uniform(int n) {
    if (n < 1) throw std::invalid_argument("Grid: n must be >= 1");
    std::vector<double> pts(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) pts[static_cast<std::size_t>(j)] = static_cast<double>(j) / n;
    return Grid(std::move(pts));
}

std::vector<double> Grid::interval_lengths() const {
    std::vector<double> len(interval_count());
    for (std::size_t j = 0; j < len.size(); ++j) len[j] = points[j + 1] - points[j];
    return len;
}

double Grid::mesh() const {
    double m = 0.0;
    for (std::size_t j = 1; j < points.size(); ++j) m = std::max(m, points[j] - points[j - 1]);
    return m;
}

StepSignal canonical_step_signal(int n) {
    if (n < 16) throw std::invalid_argument("canonical_step_signal: n must be >= 16");
    static constexpr int kCumSixteenths[] = {3, 5, 8, 10, 14, 16};
    // dyadic levels: every jump height is exactly 0.25 in double precision
    static constexpr double kLevels[] = {0.25, 0.5, 0.75, 0.5, 0.25, 0.5};
    std::vector<int> bounds{0};
    for (int c : kCumSixteenths)
        bounds.push_back(static_cast<int>((static_cast<long long>(n) * c) / 16));
    return StepSignal(std::move(bounds), std::vector<double>(std::begin(kLevels), std::end(kLevels)));
}

namespace {

double laplacian_sample(Rng& rng, double sigma) {
    // inverse CDF: x = -(sigma/sqrt(2)) * sign(u - 1/2) * ln(1 - 2|u - 1/2|)
    const double u = rng.uniform01_open();
    const double s = u - 0.5;
    const double sign = s < 0.0 ? -1.0 : 1.0;
    return -(sigma / std::sqrt(2.0)) * sign * std::log(1.0 - 2.0 * std::abs(s));
}

double gaussian_sample(Rng& rng, double sigma) {
    const double u1 = rng.uniform01_open();
    const double u2 = rng.uniform01();
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace

std::vector<double> add_noise(std::span<const double> g, const NoiseSpec& spec) {
    spec.validate();
    std::vector<double> out(g.begin(), g.end());
    if (spec.kind == NoiseKind::none) return out;

    Rng rng = Rng::derive(spec.seed, static_cast<std::uint64_t>(spec.kind));
    switch (spec.kind) {
    case NoiseKind::gaussian:
        for (double& x : out) x += gaussian_sample(rng, spec.sigma);
        break;
    case NoiseKind::laplacian:
        for (double& x : out) x += laplacian_sample(rng, spec.sigma);
        break;
    case NoiseKind::salt_pepper:
        for (double& x : out) {
            const double coin = rng.uniform01();
            const double value = rng.uniform01();
            if (coin < spec.frac) x = value;
        }
        break;
    case NoiseKind::none:
        break;
    }
    return out;
}

Kernel box_kernel(int m) {
    if (m < 1 || m % 2 == 0) throw std::invalid_argument("box_kernel: m must be odd");
    return Kernel::from_taps(std::vector<double>(static_cast<std::size_t>(m), 1.0));
}

Kernel gauss_kernel(double a, int m) {
    if (m < 1 || m % 2 == 0) throw std::invalid_argument("gauss_kernel: m must be odd");
    if (!(a > 0.0)) throw std::invalid_argument("gauss_kernel: a must be positive");
    const int c = (m - 1) / 2;
    std::vector<double> taps(static_cast<std::size_t>(m));
    for (int x = -c; x <= c; ++x)
        taps[static_cast<std::size_t>(x + c)] = std::exp(-(a * x) * (a * x));
    return Kernel::from_taps(std::move(taps));
}

Kernel make_kernel(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    try {
        if (head == "box" && colon != std::string::npos)
            return box_kernel(std::stoi(spec.substr(colon + 1)));
        if (head == "gauss" && colon != std::string::npos) {
            const auto rest = spec.substr(colon + 1);
            const auto colon2 = rest.find(':');
            if (colon2 != std::string::npos)
                return gauss_kernel(std::stod(rest.substr(0, colon2)),
                                    std::stoi(rest.substr(colon2 + 1)));
        }
    } catch (const std::logic_error&) {
        throw std::invalid_argument("make_kernel: malformed kernel spec '" + spec + "'");
    }
    throw std::invalid_argument("make_kernel: unknown kernel spec '" + spec + "'");
}

namespace {

// fine cell index range [lo, hi) covered by the target interval (a, b)
std::pair<std::size_t, std::size_t> covered_cells(double a, double b, std::size_t m) {
    const double lo_f = a * static_cast<double>(m);
    const double hi_f = b * static_cast<double>(m);
    const auto lo = static_cast<std::size_t>(std::llround(lo_f));
    const auto hi = static_cast<std::size_t>(std::llround(hi_f));
    if (std::abs(lo_f - static_cast<double>(lo)) > 1e-9 ||
        std::abs(hi_f - static_cast<double>(hi)) > 1e-9)
        throw std::invalid_argument("sampling: fine grid does not refine the target grid");
    return {lo, hi};
}

void check_fine_grid(std::span<const double> f_fine, const Grid& grid) {
    if (f_fine.empty()) throw std::invalid_argument("sampling: empty fine signal");
    if (grid.points.front() != 0.0 || grid.points.back() != 1.0)
        throw std::invalid_argument("sampling: grid must span [0,1]");
    // >= 16x finer than the smallest target interval keeps averaging exact
    // for step functions aligned to the fine grid
    double min_len = 1.0;
    for (std::size_t j = 1; j < grid.points.size(); ++j)
        min_len = std::min(min_len, grid.points[j] - grid.points[j - 1]);
    if (static_cast<double>(f_fine.size()) * min_len < 16.0 - 1e-9)
        throw std::invalid_argument("sampling: fine grid must be at least 16x finer");
}

} // namespace

WeightedSignal sample_integral(std::span<const double> f_fine, const Grid& grid) {
    check_fine_grid(f_fine, grid);
    const std::size_t m = f_fine.size();
    std::vector<double> values(grid.interval_count());
    for (std::size_t j = 0; j < values.size(); ++j) {
        const auto [lo, hi] = covered_cells(grid.points[j], grid.points[j + 1], m);
        double acc = 0.0;
        for (std::size_t c = lo; c < hi; ++c) acc += f_fine[c];
        values[j] = acc / static_cast<double>(hi - lo);
    }
    return WeightedSignal(std::move(values), grid.interval_lengths());
}

WeightedSignal sample_point(std::span<const double> f_fine, const Grid& grid) {
    check_fine_grid(f_fine, grid);
    const std::size_t m = f_fine.size();
    std::vector<double> values(grid.interval_count());
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double mid = 0.5 * (grid.points[j] + grid.points[j + 1]);
        auto cell = static_cast<std::size_t>(mid * static_cast<double>(m));
        cell = std::min(cell, m - 1);
        values[j] = f_fine[cell];
    }
    return WeightedSignal(std::move(values), grid.interval_lengths());
}

Grid refinement_grid(int level) {
    if (level < 0) throw std::invalid_argument("refinement_grid: level must be >= 0");
    // base breakpoints in 32nds: 0,1,4,5,8,9,... alternating gaps of 1 and 3
    std::vector<double> pts{0.0};
    for (int j = 0; j < 8; ++j) {
        pts.push_back((4.0 * j + 1.0) / 32.0);
        pts.push_back((4.0 * j + 4.0) / 32.0);
    }
    for (int k = 0; k < level; ++k) {
        std::vector<double> finer;
        finer.reserve(pts.size() * 2);
        for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
            finer.push_back(pts[j]);
            finer.push_back(0.5 * (pts[j] + pts[j + 1]));
        }
        finer.push_back(pts.back());
        pts = std::move(finer);
    }
    return Grid(std::move(pts));
}

} // namespace potts
