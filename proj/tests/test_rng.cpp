#include <catch2/catch_amalgamated.hpp>

#include "mpb/rng.hpp"

using namespace mpb;

TEST_CASE("substreams are deterministic and distinct", "[rng]") {
    Rng a = Rng::substream(42, 7);
    Rng b = Rng::substream(42, 7);
    Rng c = Rng::substream(42, 8);
    bool differs = false;
    for (int i = 0; i < 64; ++i) {
        const auto x = a.next_u64();
        REQUIRE(x == b.next_u64());
        differs = differs || (x != c.next_u64());
    }
    REQUIRE(differs);
}

TEST_CASE("uniform01 stays in [0,1)", "[rng]") {
    Rng r(3);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("poisson sampling has the right mean and variance", "[rng]") {
    Rng r(11);
    const double mean = 16.0;
    const int n = 20000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(r.poisson(mean));
        sum += x;
        sum2 += x * x;
    }
    const double m = sum / n;
    const double v = sum2 / n - m * m;
    REQUIRE(std::fabs(m - mean) < 4.0 * std::sqrt(mean / n));
    REQUIRE(std::fabs(v - mean) < 0.05 * mean);
    REQUIRE(r.poisson(0.0) == 0);
}

TEST_CASE("exponential has the right mean", "[rng]") {
    Rng r(5);
    const double rate = 3.0;
    const int n = 50000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += r.exponential(rate);
    REQUIRE(std::fabs(sum / n - 1.0 / rate) < 4.0 / (rate * std::sqrt(double(n))));
    REQUIRE_THROWS_AS(r.exponential(0.0), std::invalid_argument);
}
