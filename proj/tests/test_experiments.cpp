#include <doctest.h>

#include <sstream>

#include "potts/experiments.hpp"

using namespace potts;

TEST_CASE("runtime scaling records and slope fit") {
    const auto records = runtime_scaling({128, 256, 512}, 3, 5);
    CHECK(records.size() == 6); // 3 sizes x 2 methods
    for (const auto& r : records) {
        CHECK(r.seconds > 0.0);
        CHECK(r.reps == 3);
    }
    // a quadratic algorithm at small n still grows clearly superlinearly
    CHECK(loglog_slope(records, "l1potts") > 1.0);

    std::ostringstream os;
    write_bench_csv(os, records);
    const std::string csv = os.str();
    CHECK(csv.rfind("n,method,seconds,reps\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("method comparison rows and success rates") {
    NoiseSpec laplace;
    laplace.kind = NoiseKind::laplacian;
    laplace.sigma = 0.1;
    const auto rows = method_comparison({laplace}, {1.0}, 3, 128);
    CHECK(rows.size() == 6); // 1 case x 1 gamma x 2 methods x 3 seeds
    for (const auto& r : rows) {
        CHECK(r.l1_err >= 0.0);
        CHECK(r.jump_err >= 0);
    }
    const double rate = success_rate(rows, NoiseKind::laplacian, "l1potts", 1.0);
    CHECK(rate >= 0.0);
    CHECK(rate <= 1.0);

    std::ostringstream os;
    write_comparison_csv(os, rows);
    CHECK(os.str().rfind("noise,sigma,frac,method,gamma,seed,", 0) == 0);

    // deterministic given the seed set
    const auto rows2 = method_comparison({laplace}, {1.0}, 3, 128);
    std::ostringstream os2;
    write_comparison_csv(os2, rows2);
    CHECK(os.str() == os2.str());
}

TEST_CASE("convergence study") {
    SUBCASE("single level is its own reference") {
        const auto rows = convergence_study(1, 3);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].l1_dist_to_finest == 0.0);
        CHECK(rows[0].n == 16);
    }
    SUBCASE("distances shrink along refinement") {
        const auto rows = convergence_study(5, 3);
        REQUIRE(rows.size() == 5);
        CHECK(rows.back().l1_dist_to_finest == 0.0);
        CHECK(rows.back().l1_dist_to_finest <= rows.front().l1_dist_to_finest);
        for (std::size_t k = 1; k < rows.size(); ++k)
            CHECK(rows[k].l1_dist_to_finest <= rows[k - 1].l1_dist_to_finest + 1e-3);

        std::ostringstream os;
        write_convergence_csv(os, rows);
        CHECK(os.str().rfind("level,n,potts_value,l1_dist_to_finest\n", 0) == 0);
    }
}
