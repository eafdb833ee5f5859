#include "potts/deconvolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "potts/solver.hpp"

namespace potts {

Kernel Kernel::from_taps(std::vector<double> taps, bool normalize) {
    if (taps.empty() || taps.size() % 2 == 0)
        throw std::invalid_argument("Kernel: tap count must be odd");
    const std::size_t m = taps.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (!(taps[i] >= 0.0))
            throw std::invalid_argument("Kernel: taps must be nonnegative");
        const double a = taps[i];
        const double b = taps[m - 1 - i];
        if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}))
            throw std::invalid_argument("Kernel: taps must be symmetric");
    }
    if (!(taps[m / 2] > 0.0))
        throw std::invalid_argument("Kernel: center tap must be positive");

    Kernel k;
    k.taps = std::move(taps);
    if (normalize) {
        const double s = k.tap_sum();
        for (double& t : k.taps) t /= s;
        k.normalized = true;
    } else {
        k.normalized = std::abs(k.tap_sum() - 1.0) <= 1e-12;
    }
    return k;
}

double Kernel::tap_sum() const {
    double s = 0.0;
    for (double t : taps) s += t;
    return s;
}

namespace {

inline std::size_t clamp_index(long long i, std::size_t n) {
    if (i < 0) return 0;
    if (i >= static_cast<long long>(n)) return n - 1;
    return static_cast<std::size_t>(i);
}

void check_kernel_fits(std::size_t n, const Kernel& k) {
    if (k.taps.size() > 2 * n + 1)
        throw std::invalid_argument("kernel longer than 2n+1");
}

} // namespace

std::vector<double> convolve_same(std::span<const double> u, const Kernel& kernel) {
    if (u.empty()) throw std::invalid_argument("convolve_same: empty input");
    check_kernel_fits(u.size(), kernel);
    const long long c = kernel.half_width();
    const std::size_t n = u.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < kernel.taps.size(); ++k)
            acc += kernel.taps[k] * u[clamp_index(static_cast<long long>(i) + static_cast<long long>(k) - c, n)];
        out[i] = acc;
    }
    return out;
}

std::vector<double> convolve_adjoint(std::span<const double> u, const Kernel& kernel) {
    if (u.empty()) throw std::invalid_argument("convolve_adjoint: empty input");
    check_kernel_fits(u.size(), kernel);
    const long long c = kernel.half_width();
    const std::size_t n = u.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < kernel.taps.size(); ++k)
            out[clamp_index(static_cast<long long>(i) + static_cast<long long>(k) - c, n)] +=
                kernel.taps[k] * u[i];
    return out;
}

namespace {

double operator_norm_bound(std::size_t n, const Kernel& kernel) {
    // ||A||_2^2 <= ||A||_1 * ||A||_inf. Row sums equal the tap sum; replicate
    // padding makes boundary column sums larger, so compute them exactly.
    const long long c = kernel.half_width();
    std::vector<double> col(n, 0.0);
    double row_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t k = 0; k < kernel.taps.size(); ++k) {
            col[clamp_index(static_cast<long long>(i) + static_cast<long long>(k) - c, n)] +=
                kernel.taps[k];
            row += kernel.taps[k];
        }
        row_max = std::max(row_max, row);
    }
    const double col_max = *std::max_element(col.begin(), col.end());
    return std::sqrt(col_max * row_max);
}

double kl1l1_objective(std::span<const double> w, std::span<const double> g,
                       const Kernel& kernel, double mu) {
    const auto kw = convolve_same(w, kernel);
    double obj = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        obj += mu * std::abs(w[i]) + std::abs(kw[i] - g[i]);
    return obj;
}

} // namespace

KL1L1Result solve_kl1l1(std::span<const double> g, const Kernel& kernel, double mu,
                        int max_iterations, double tolerance) {
    if (!(mu > 0.0)) throw std::invalid_argument("solve_kl1l1: mu must be positive");
    const std::size_t n = g.size();
    check_kernel_fits(n, kernel);

    const double L = operator_norm_bound(n, kernel);
    const double tau = 0.95 / L;
    const double sigma = 0.95 / L;

    std::vector<double> w(n, 0.0), w_bar(n, 0.0), w_prev(n, 0.0), p(n, 0.0);

    KL1L1Result result;
    result.w = w;
    result.objective = kl1l1_objective(w, g, kernel, mu); // value at w = 0

    for (int it = 1; it <= max_iterations; ++it) {
        // dual ascent + projection onto the inf-ball
        const auto kw = convolve_same(w_bar, kernel);
        for (std::size_t i = 0; i < n; ++i)
            p[i] = std::clamp(p[i] + sigma * (kw[i] - g[i]), -1.0, 1.0);

        // primal descent + soft threshold
        w_prev = w;
        const auto ktp = convolve_adjoint(p, kernel);
        const double thr = tau * mu;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = w[i] - tau * ktp[i];
            w[i] = x > thr ? x - thr : (x < -thr ? x + thr : 0.0);
        }
        for (std::size_t i = 0; i < n; ++i) w_bar[i] = 2.0 * w[i] - w_prev[i];

        double change = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            change = std::max(change, std::abs(w[i] - w_prev[i]));
            scale = std::max(scale, std::abs(w[i]));
        }

        const bool settle = change <= tolerance * std::max(1.0, scale);
        if (settle || it % 10 == 0 || it == max_iterations) {
            const double obj = kl1l1_objective(w, g, kernel, mu);
            if (obj < result.objective) {
                result.objective = obj;
                result.w = w;
            }
        }
        result.iterations = it;
        if (settle) {
            result.converged = true;
            break;
        }
    }
    return result;
}

SplitParams::SplitParams(double gamma_, double mu0_) : gamma(gamma_), mu0(mu0_) {
    if (!(gamma > 0.0)) throw std::invalid_argument("SplitParams: gamma must be positive");
    if (mu0 <= 0.0) mu0 = 0.01 * gamma; // small initial coupling
    if (!(mu_growth > 1.0)) throw std::invalid_argument("SplitParams: mu_growth must exceed 1");
}

SplitResult min_kl1potts_split(std::span<const double> f, const Kernel& kernel,
                               const SplitParams& params) {
    if (f.empty()) throw std::invalid_argument("min_kl1potts_split: empty input");
    check_kernel_fits(f.size(), kernel);

    const std::vector<double> data(f.begin(), f.end());
    std::vector<double> v = data;
    double mu = params.mu0;

    StepSignal u = StepSignal::constant(0.0, static_cast<int>(f.size()));
    bool have_prev = false;
    StepSignal u_prev = u;
    double coupling_gap = std::numeric_limits<double>::infinity(); // max |w| of the last subsolve
    int outer = 0;
    bool stalled = false;

    for (outer = 1; outer <= params.max_outer; ++outer) {
        u = min_l1_potts(WeightedSignal::uniform(v), params.gamma / mu);

        // Stalling needs the coupling to be inactive as well: while mu is
        // small, consecutive Potts iterates can coincide (both heavily
        // over-smoothed) even though u and v are still far apart.
        if (have_prev && coupling_gap <= params.stall_tol &&
            u.boundaries() == u_prev.boundaries()) {
            double level_change = 0.0;
            for (std::size_t s = 0; s < u.levels().size(); ++s)
                level_change = std::max(level_change,
                                        std::abs(u.levels()[s] - u_prev.levels()[s]));
            if (level_change < params.stall_tol) {
                stalled = true;
                break;
            }
        }
        u_prev = u;
        have_prev = true;

        // residual problem: w minimizes mu*||w||_1 + ||K*w - (K*u - f)||_1
        const auto ku = convolve_same(u.expand(), kernel);
        std::vector<double> residual(ku.size());
        for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = ku[i] - data[i];
        const auto sub = solve_kl1l1(residual, kernel, mu, params.inner_iters, params.inner_tol);

        coupling_gap = 0.0;
        const auto ue = u.expand();
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = ue[i] - sub.w[i];
            coupling_gap = std::max(coupling_gap, std::abs(sub.w[i]));
        }
        mu *= params.mu_growth;
    }

    SplitResult result{std::move(u), std::min(outer, params.max_outer), 0.0, stalled};
    const auto ku = convolve_same(result.u.expand(), kernel);
    double fid = 0.0;
    for (std::size_t i = 0; i < ku.size(); ++i) fid += std::abs(ku[i] - data[i]);
    result.objective = params.gamma * result.u.jump_count() + fid;
    return result;
}

GammaRange deconv_gamma_range(const DeconvBounds& b) {
    if (!(b.h_min > 0.0) || !(b.h_max > 0.0) || !(b.l_min > 0.0))
        throw std::invalid_argument("deconv_gamma_range: heights and plateau length must be positive");
    if (b.h_min > b.h_max)
        throw std::invalid_argument("deconv_gamma_range: h_min must not exceed h_max");
    if (b.kappa < 0.0 || b.eta < 0.0)
        throw std::invalid_argument("deconv_gamma_range: kappa and eta must be nonnegative");

    GammaRange r;
    r.max_kappa_eta = b.h_min * b.l_min / (2.0 * (8.0 * b.h_max + b.h_min));
    const double ke = b.kappa + b.eta;
    r.lo = 2.0 * ke * b.h_max;
    r.hi = 0.5 * b.h_min * b.l_min - (b.h_min + 6.0 * b.h_max) * ke;
    r.feasible = ke <= r.max_kappa_eta && r.lo <= r.hi;
    return r;
}

} // namespace potts
