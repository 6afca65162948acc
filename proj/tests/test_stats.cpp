#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "mpb/rng.hpp"
#include "mpb/stats.hpp"

using namespace mpb;

TEST_CASE("summary moments on a hand sample", "[stats]") {
    const SampleSummary s = summarize({1.0, 2.0, 3.0, 4.0});
    REQUIRE(s.mean == Catch::Approx(2.5));
    REQUIRE(s.variance == Catch::Approx(5.0 / 3.0));
    REQUIRE(s.min == 1.0);
    REQUIRE(s.max == 4.0);
    REQUIRE(s.skewness == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("KS distance separates normal from shifted samples", "[stats]") {
    Rng rng(23);
    std::vector<double> z;
    for (int i = 0; i < 4000; ++i) {
        // Box-Muller
        const double u1 = std::max(rng.uniform01(), 1e-300);
        const double u2 = rng.uniform01();
        z.push_back(std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2));
    }
    REQUIRE(ks_distance_normal(z) < 1.63 / std::sqrt(4000.0) + 0.01);
    std::vector<double> shifted = z;
    for (auto& x : shifted) x += 0.5;
    REQUIRE(ks_distance_normal(shifted) > 0.1);
}

TEST_CASE("correlation of independent streams is near zero", "[stats]") {
    Rng rng(29);
    std::vector<double> xs, ys;
    for (int i = 0; i < 5000; ++i) {
        xs.push_back(rng.uniform01());
        ys.push_back(rng.uniform01());
    }
    REQUIRE(std::fabs(pearson_correlation(xs, ys)) < 3.0 / std::sqrt(5000.0));
    REQUIRE(pearson_correlation(xs, xs) == Catch::Approx(1.0));
}

TEST_CASE("binomial z-test p-values behave", "[stats]") {
    REQUIRE(binomial_two_sided_pvalue(500, 1000, 0.5) > 0.9);
    REQUIRE(binomial_two_sided_pvalue(700, 1000, 0.5) < 1e-6);
}
