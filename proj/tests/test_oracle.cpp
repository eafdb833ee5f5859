#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "potts/oracle.hpp"
#include "test_util.hpp"

using namespace potts;
using oracle::Norm;
using testutil::approx_rel;

TEST_CASE("enumeration basics") {
    SUBCASE("single sample") {
        const auto [u, energy] = oracle::enumerate_exact(
            WeightedSignal::uniform({3.5}), 1.0, Norm::L1);
        CHECK(u.segment_count() == 1);
        CHECK(u.levels()[0] == 3.5);
        CHECK(energy == 0.0);
    }
    SUBCASE("two plateaus beat one jumpless fit") {
        const auto [u, energy] = oracle::enumerate_exact(
            WeightedSignal::uniform({0, 0, 1, 1}), 0.1, Norm::L1);
        CHECK(energy == doctest::Approx(0.1));
        CHECK(u.boundaries() == std::vector<int>{0, 2, 4});
    }
    SUBCASE("large gamma keeps a single segment with the median level") {
        const auto [u, energy] = oracle::enumerate_exact(
            WeightedSignal::uniform({1, 2, 9}), 10.0, Norm::L1);
        CHECK(energy == doctest::Approx(8.0));
        CHECK(u.segment_count() == 1);
        CHECK(u.levels()[0] == 2.0);
    }
    SUBCASE("size limit") {
        CHECK_THROWS_AS((oracle::enumerate_exact(
                            WeightedSignal::uniform(std::vector<double>(17, 0.0)), 1.0, Norm::L1)),
                        std::invalid_argument);
    }
}

TEST_CASE("L2 enumeration examples") {
    SUBCASE("small gamma splits") {
        const auto [u, energy] = oracle::enumerate_exact(
            WeightedSignal::uniform({0, 0, 1, 1}), 0.1, Norm::L2);
        CHECK(energy == doctest::Approx(0.1));
    }
    SUBCASE("large gamma averages") {
        const auto [u, energy] = oracle::enumerate_exact(
            WeightedSignal::uniform({0, 0, 1, 1}), 2.0, Norm::L2);
        CHECK(energy == doctest::Approx(1.0));
        CHECK(u.segment_count() == 1);
        CHECK(u.levels()[0] == doctest::Approx(0.5));
    }
}

TEST_CASE("naive DP basics") {
    SUBCASE("constant data costs nothing") {
        const auto [p, energy] = oracle::naive_dp(
            WeightedSignal::uniform(std::vector<double>(20, 2.0)), 0.7);
        CHECK(energy == doctest::Approx(0.0));
        p.validate_chain();
    }
    SUBCASE("agrees with enumeration on random small instances") {
        Rng rng(99);
        for (int trial = 0; trial < 150; ++trial) {
            const int n = static_cast<int>(rng.uniform_int(1, 14));
            const auto f = testutil::random_signal(rng, n, trial % 2 ? 1.0 : 8.0);
            const double gamma = rng.uniform(0.01, 3.0);
            const auto [ue, ee] = oracle::enumerate_exact(f, gamma, Norm::L1);
            const auto [pd, ed] = oracle::naive_dp(f, gamma);
            CHECK(approx_rel(ee, ed));
        }
    }
}

TEST_CASE("fixture emitter round trip") {
    const WeightedSignal f({2, 1, 3, 1, 3}, {0.15, 0.25, 0.3, 0.2, 0.1});
    const auto [p, energy] = oracle::naive_dp(f, 0.05);
    std::ostringstream os;
    oracle::write_fixture(os, f, 0.05, p, energy);
    const std::string text = os.str();
    CHECK(text.find("i,f,w,p,B") != std::string::npos);
    CHECK(text.find("gamma=0.05") != std::string::npos);
    // one row per sample plus the B_0 row
    CHECK(std::count(text.begin(), text.end(), '\n') == 9);
}
