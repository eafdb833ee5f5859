#pragma once

#include <cstdint>
#include <string>

#include "potts/deconvolution.hpp"
#include "potts/types.hpp"

namespace potts {

enum class NoiseKind { none, gaussian, laplacian, salt_pepper };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::none;
    double sigma = 0.0;     // gaussian / laplacian standard deviation
    double frac = 0.0;      // salt-and-pepper replacement probability
    std::uint64_t seed = 0;

    void validate() const;
};

// Breakpoints 0 <= x_0 < x_1 < ... < x_n <= 1; interval j is (x_{j-1}, x_j).
struct Grid {
    std::vector<double> points;

    explicit Grid(std::vector<double> pts);
    static Grid uniform(int n); // n intervals over [0,1]

    std::size_t interval_count() const { return points.size() - 1; }
    std::vector<double> interval_lengths() const;
    double mesh() const; // largest interval length
};

// The repository's fixed ground truth: six plateaus with length shares
// 3,2,3,2,4,2 sixteenths of n (so the shortest plateau is n/8 samples) and
// levels 0.25, 0.5, 0.75, 0.5, 0.25, 0.5. Every jump has height exactly 0.25,
// which makes h_min = h_max = 0.25 and keeps the blind-deconvolution bound as
// wide as the plateau layout allows.
StepSignal canonical_step_signal(int n);

constexpr double kCanonicalHmin = 0.25;
constexpr double kCanonicalHmax = 0.25;
constexpr double kCanonicalLminFraction = 0.125; // l_min / n

// Applies the noise model sample-wise; deterministic for a fixed seed.
// Laplacian samples come from the inverse CDF of the density
// 1/(sqrt(2) sigma) exp(-sqrt(2)|x|/sigma); salt-and-pepper replaces a sample
// with Uniform[0,1] with probability frac.
std::vector<double> add_noise(std::span<const double> g, const NoiseSpec& spec);

Kernel box_kernel(int m);
// taps exp(-(a*x)^2) on integer offsets |x| <= (m-1)/2, normalized
Kernel gauss_kernel(double a, int m);
// parses "box:M" or "gauss:A:M"
Kernel make_kernel(const std::string& spec);

// Sampling of a fine piecewise constant signal (values on a uniform fine
// grid over [0,1]) onto a coarser grid. Weights are the interval lengths.
// The fine grid must subdivide every target interval.
WeightedSignal sample_integral(std::span<const double> f_fine, const Grid& grid);
WeightedSignal sample_point(std::span<const double> f_fine, const Grid& grid);

// Nested grids for the discretization study: level 0 has 16 intervals with
// lengths alternating 1/32 and 3/32 (weight ratio 3), each level bisects
// every interval. Level k therefore has 16 * 2^k intervals.
Grid refinement_grid(int level);

} // namespace potts
