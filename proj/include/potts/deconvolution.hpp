#pragma once

#include <span>
#include <vector>

#include "potts/types.hpp"

namespace potts {

// Finite symmetric nonnegative convolution mask with an odd number of taps.
struct Kernel {
    std::vector<double> taps;
    bool normalized = false;

    // Validates symmetry, sign and the center tap; divides by the tap sum
    // when normalize is set (the usual case).
    static Kernel from_taps(std::vector<double> taps, bool normalize = true);

    int size() const { return static_cast<int>(taps.size()); }
    int half_width() const { return (size() - 1) / 2; }
    // half-support in continuous units for a given grid spacing
    double half_support(double grid_spacing) const { return half_width() * grid_spacing; }
    double tap_sum() const;
};

// Same-length convolution with replicate (edge value) boundary extension.
// A normalized kernel maps constant sequences to themselves.
std::vector<double> convolve_same(std::span<const double> u, const Kernel& kernel);

// Exact adjoint of convolve_same (replicate padding folds edge contributions
// back onto the boundary samples).
std::vector<double> convolve_adjoint(std::span<const double> u, const Kernel& kernel);

struct KL1L1Result {
    std::vector<double> w;
    bool converged = false;
    int iterations = 0;
    double objective = 0.0; // mu*||w||_1 + ||K*w - g||_1
};

// Approximate minimizer of  mu*||w||_1 + ||K*w - g||_1  by a first-order
// primal-dual scheme (dual projection onto the unit inf-ball shifted by g,
// primal soft-thresholding). Returns the best-objective iterate; the reported
// objective therefore never exceeds the value at w = 0. Non-convergence is
// reported through the flag, not an exception.
KL1L1Result solve_kl1l1(std::span<const double> g, const Kernel& kernel, double mu,
                        int max_iterations = 2000, double tolerance = 1e-8);

struct SplitParams {
    double gamma;
    double mu0;
    double mu_growth = 1.5;
    int max_outer = 50;
    int inner_iters = 2000;
    double inner_tol = 1e-8;
    double stall_tol = 1e-6;

    explicit SplitParams(double gamma_, double mu0_ = -1.0);
};

struct SplitResult {
    StepSignal u;
    int outer_iterations = 0;
    double objective = 0.0; // gamma*J(u) + ||K*u - f||_1
    bool stalled = false;   // consecutive outer iterates agreed
};

// Alternating minimization for  gamma*J(u) + ||K*u - f||_1  with a coupling
// term mu*||u - v||_1: an L1-Potts solve with penalty gamma/mu, then a
// K-L1-L1 solve on the residual, with mu grown geometrically until the Potts
// iterate stops changing.
SplitResult min_kl1potts_split(std::span<const double> f, const Kernel& kernel,
                               const SplitParams& params);

// Geometry of a step signal for the blind-deconvolution parameter bounds:
// jump heights in [h_min, h_max], minimal plateau length l_min, kernel
// half-support kappa and mesh size eta, all in continuous units.
struct DeconvBounds {
    double h_min;
    double h_max;
    double l_min;
    double kappa;
    double eta;
};

struct GammaRange {
    bool feasible = false;
    double lo = 0.0;
    double hi = 0.0;
    double max_kappa_eta = 0.0; // largest admissible kappa + eta
};

// Admissible jump penalties for exact blind recovery:
// 2*(kappa+eta)*h_max <= gamma <= h_min*l_min/2 - (h_min + 6*h_max)*(kappa+eta),
// nonempty iff kappa+eta <= h_min*l_min / (2*(8*h_max + h_min)).
GammaRange deconv_gamma_range(const DeconvBounds& bounds);

} // namespace potts
