#include <catch2/catch_amalgamated.hpp>

#include "mpb/intervals.hpp"
#include "mpb/rng.hpp"

using namespace mpb;

namespace {

int brute_depth(const std::vector<Interval>& iv, double t) {
    int d = 0;
    for (const auto& i : iv)
        if (t >= i.a && t < i.b) ++d;
    return d;
}

}  // namespace

TEST_CASE("depth profile partitions the horizon exactly", "[intervals]") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const double T = 1.0 + 4.0 * rng.uniform01();
        std::vector<Interval> iv;
        const int n = static_cast<int>(rng.uniform(0.0, 20.0));
        for (int i = 0; i < n; ++i) {
            double a = rng.uniform(-0.5, T + 0.5);
            double b = a + rng.uniform(0.0, 1.0);
            iv.push_back({a, b});
        }
        const DepthProfile prof = build_depth_profile(iv, T);
        REQUIRE_FALSE(prof.empty());
        REQUIRE(prof.front().a == 0.0);
        REQUIRE(prof.back().b == T);
        for (std::size_t i = 1; i < prof.size(); ++i) REQUIRE(prof[i].a == prof[i - 1].b);
        // depth matches brute force at each piece midpoint
        std::vector<Interval> clipped;
        for (auto v : iv) {
            v.a = std::max(v.a, 0.0);
            v.b = std::min(v.b, T);
            if (!v.empty()) clipped.push_back(v);
        }
        for (const auto& p : prof)
            REQUIRE(p.depth == brute_depth(clipped, 0.5 * (p.a + p.b)));
        // complement identity
        double all = 0.0;
        for (const auto& p : prof) all += p.b - p.a;
        REQUIRE(std::fabs(all - T) < 1e-12);
        REQUIRE(std::fabs(measure_below(prof, 1) + union_length(prof) - T) < 1e-12);
    }
}

TEST_CASE("abutting intervals do not dip at the shared endpoint", "[intervals]") {
    const DepthProfile prof = build_depth_profile({{0.0, 0.4}, {0.4, 0.8}}, 1.0);
    for (const auto& p : prof)
        if (p.b <= 0.8) REQUIRE(p.depth == 1);
    REQUIRE(measure_below(prof, 1) == Catch::Approx(0.2));
}

TEST_CASE("zero horizon and empty input", "[intervals]") {
    REQUIRE(build_depth_profile({}, 0.0).empty());
    const DepthProfile prof = build_depth_profile({}, 2.0);
    REQUIRE(prof.size() == 1);
    REQUIRE(prof[0].depth == 0);
    REQUIRE(measure_below(prof, 1) == 2.0);
}
