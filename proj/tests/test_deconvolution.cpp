#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "potts/deconvolution.hpp"
#include "potts/rng.hpp"
#include "potts/signals.hpp"
#include "potts/solver.hpp"
#include "test_util.hpp"

using namespace potts;
using testutil::approx_rel;

namespace {

double kl1l1_objective(std::span<const double> w, std::span<const double> g, const Kernel& k,
                       double mu) {
    const auto kw = convolve_same(w, k);
    double obj = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        obj += mu * std::abs(w[i]) + std::abs(kw[i] - g[i]);
    return obj;
}

} // namespace

TEST_CASE("kernel validation") {
    CHECK_THROWS_AS(Kernel::from_taps({0.5, 0.5}), std::invalid_argument);      // even
    CHECK_THROWS_AS(Kernel::from_taps({0.2, 0.5, 0.3}), std::invalid_argument); // asymmetric
    CHECK_THROWS_AS(Kernel::from_taps({0.5, 0.0, 0.5}), std::invalid_argument); // zero center
    CHECK_THROWS_AS(Kernel::from_taps({-1.0, 3.0, -1.0}), std::invalid_argument);

    const auto k = Kernel::from_taps({1, 2, 1});
    CHECK(k.normalized);
    CHECK(k.tap_sum() == doctest::Approx(1.0));
    CHECK(k.half_width() == 1);
    CHECK(k.half_support(1.0 / 256) == doctest::Approx(1.0 / 256));
}

TEST_CASE("convolution with replicate boundary") {
    SUBCASE("identity kernel") {
        const std::vector<double> u{1, 2, 3, 4};
        CHECK(convolve_same(u, Kernel::from_taps({1.0})) == u);
    }
    SUBCASE("box of three") {
        const std::vector<double> u{0, 0, 3, 0, 0};
        const auto out = convolve_same(u, box_kernel(3));
        REQUIRE(out.size() == 5);
        CHECK(out[0] == doctest::Approx(0.0));
        CHECK(out[1] == doctest::Approx(1.0));
        CHECK(out[2] == doctest::Approx(1.0));
        CHECK(out[3] == doctest::Approx(1.0));
        CHECK(out[4] == doctest::Approx(0.0));
    }
    SUBCASE("normalized kernels preserve constants") {
        const std::vector<double> u(20, 2.75);
        const auto out = convolve_same(u, gauss_kernel(0.2, 9));
        for (double x : out) CHECK(x == doctest::Approx(2.75));
    }
    SUBCASE("kernel too long") {
        CHECK_THROWS_AS(convolve_same(std::vector<double>{1.0}, box_kernel(5)),
                        std::invalid_argument);
    }
    SUBCASE("linearity and interior shift equivariance") {
        Rng rng(8);
        const auto k = gauss_kernel(0.4, 7);
        const int n = 64;
        std::vector<double> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[static_cast<std::size_t>(i)] = rng.uniform01();
            b[static_cast<std::size_t>(i)] = rng.uniform01();
        }
        const double alpha = rng.uniform(-2.0, 2.0);
        std::vector<double> combo(n);
        for (int i = 0; i < n; ++i)
            combo[static_cast<std::size_t>(i)] = alpha * a[static_cast<std::size_t>(i)] +
                                                 b[static_cast<std::size_t>(i)];
        const auto ka = convolve_same(a, k);
        const auto kb = convolve_same(b, k);
        const auto kc = convolve_same(combo, k);
        for (int i = 0; i < n; ++i)
            CHECK(kc[static_cast<std::size_t>(i)] ==
                  doctest::Approx(alpha * ka[static_cast<std::size_t>(i)] +
                                  kb[static_cast<std::size_t>(i)]));

        std::vector<double> shifted(n, 0.0);
        for (int i = 1; i < n; ++i) shifted[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i - 1)];
        const auto ks = convolve_same(shifted, k);
        for (int i = 8; i < n - 8; ++i)
            CHECK(ks[static_cast<std::size_t>(i)] == doctest::Approx(ka[static_cast<std::size_t>(i - 1)]));
    }
    SUBCASE("adjoint pairing <Ku, p> == <u, K^T p>") {
        Rng rng(9);
        const auto k = gauss_kernel(0.3, 11);
        const int n = 40;
        std::vector<double> u(n), p(n);
        for (int i = 0; i < n; ++i) {
            u[static_cast<std::size_t>(i)] = rng.uniform(-1, 1);
            p[static_cast<std::size_t>(i)] = rng.uniform(-1, 1);
        }
        const auto ku = convolve_same(u, k);
        const auto ktp = convolve_adjoint(p, k);
        double lhs = 0, rhs = 0;
        for (int i = 0; i < n; ++i) {
            lhs += ku[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
            rhs += u[static_cast<std::size_t>(i)] * ktp[static_cast<std::size_t>(i)];
        }
        CHECK(lhs == doctest::Approx(rhs));
    }
}

TEST_CASE("K-L1-L1 subproblem") {
    const auto identity = Kernel::from_taps({1.0});

    SUBCASE("zero data gives zero") {
        const std::vector<double> g(16, 0.0);
        const auto r = solve_kl1l1(g, identity, 0.5);
        CHECK(r.objective == doctest::Approx(0.0));
        for (double x : r.w) CHECK(x == 0.0);
    }
    SUBCASE("identity kernel, mu above one keeps w at zero") {
        std::vector<double> g(16, 0.0);
        g[3] = 2.0;
        g[8] = -1.0;
        const auto r = solve_kl1l1(g, identity, 1.5);
        double norm1 = 0.0;
        for (double x : g) norm1 += std::abs(x);
        CHECK(r.objective == doctest::Approx(norm1)); // value at w = 0
        for (double x : r.w) CHECK(std::abs(x) <= 1e-6);
    }
    SUBCASE("identity kernel, small mu follows the data") {
        std::vector<double> g(16, 0.0);
        g[0] = 5.0;
        const auto r = solve_kl1l1(g, identity, 0.1, 4000, 1e-10);
        CHECK(r.objective == doctest::Approx(0.5).epsilon(1e-3)); // 0.1 * 5
        CHECK(r.w[0] == doctest::Approx(5.0).epsilon(1e-3));
        for (std::size_t i = 1; i < r.w.size(); ++i) CHECK(std::abs(r.w[i]) <= 1e-4);
    }
    SUBCASE("objective at the output never exceeds the value at zero") {
        Rng rng(23);
        for (int trial = 0; trial < 20; ++trial) {
            const auto k = trial % 2 ? box_kernel(5) : gauss_kernel(0.3, 9);
            std::vector<double> g(48);
            for (auto& x : g) x = rng.uniform(-1, 1);
            const double mu = rng.uniform(0.05, 2.0);
            const auto r = solve_kl1l1(g, k, mu, 500, 1e-9);
            const std::vector<double> zero(g.size(), 0.0);
            CHECK(r.objective <= kl1l1_objective(zero, g, k, mu) + 1e-12);
            CHECK(approx_rel(r.objective, kl1l1_objective(r.w, g, k, mu)));
        }
    }
}

TEST_CASE("splitting deconvolution") {
    SUBCASE("identity kernel stalls on the plain minimizer") {
        const auto truth = canonical_step_signal(64);
        const auto f = truth.expand();
        SplitParams params(0.5, /*mu0=*/1.0);
        const auto result = min_kl1potts_split(f, Kernel::from_taps({1.0}), params);
        CHECK(result.stalled);
        const auto plain = min_l1_potts(WeightedSignal::uniform(f), 0.5);
        CHECK(result.u == plain);
        CHECK(result.outer_iterations <= 3);
    }
    SUBCASE("mild blur in the exact-recovery regime matches the plain solve") {
        const int n = 512;
        const auto truth = canonical_step_signal(n);
        const auto f = convolve_same(truth.expand(), box_kernel(3));
        // gamma in sample units: the blind-recovery range scaled by n
        const DeconvBounds bounds{kCanonicalHmin, kCanonicalHmax, kCanonicalLminFraction,
                                  box_kernel(3).half_support(1.0 / n), 1.0 / n};
        const auto range = deconv_gamma_range(bounds);
        REQUIRE(range.feasible);
        const double gamma = 0.5 * (range.lo + range.hi) * n;

        const auto plain = min_l1_potts(WeightedSignal::uniform(f), gamma);
        SplitParams params(gamma, /*mu0=*/1.0);
        const auto result = min_kl1potts_split(f, box_kernel(3), params);
        CHECK(result.stalled);
        CHECK(result.u == plain);
        CHECK(result.u.jump_count() == truth.jump_count());
    }
    SUBCASE("non-stall is reported") {
        const auto truth = canonical_step_signal(32);
        const auto f = convolve_same(truth.expand(), box_kernel(5));
        SplitParams params(0.5);
        params.max_outer = 1;
        const auto result = min_kl1potts_split(f, box_kernel(5), params);
        CHECK(!result.stalled);
        CHECK(result.outer_iterations == 1);
    }
}

TEST_CASE("blind deconvolution gamma range") {
    SUBCASE("worked example") {
        const auto r = deconv_gamma_range(DeconvBounds{1.0, 1.0, 0.5, 0.02, 0.0});
        REQUIRE(r.feasible);
        CHECK(r.lo == doctest::Approx(0.04));
        CHECK(r.hi == doctest::Approx(0.11));
    }
    SUBCASE("unblurred case starts at zero") {
        const auto r = deconv_gamma_range(DeconvBounds{1.0, 1.0, 0.5, 0.0, 0.0});
        REQUIRE(r.feasible);
        CHECK(r.lo == 0.0);
        CHECK(r.hi == doctest::Approx(0.25));
    }
    SUBCASE("infeasible kernel size reports the largest admissible value") {
        const auto r = deconv_gamma_range(DeconvBounds{1.0, 1.0, 0.5, 0.05, 0.0});
        CHECK(!r.feasible);
        CHECK(r.max_kappa_eta == doctest::Approx(0.5 / 18.0));
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(deconv_gamma_range(DeconvBounds{2.0, 1.0, 0.5, 0.0, 0.0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(deconv_gamma_range(DeconvBounds{1.0, 1.0, -0.5, 0.0, 0.0}),
                        std::invalid_argument);
    }
}
