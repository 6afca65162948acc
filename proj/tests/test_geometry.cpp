#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "mpb/geometry.hpp"

using namespace mpb;

TEST_CASE("region validation and dilation", "[geometry]") {
    REQUIRE_THROWS_AS(Region::box(2, {0, 0, 0}, {0, 1, 0}), std::invalid_argument);
    const Region r = Region::unit_cube(2).dilated(0.1);
    REQUIRE(r.lo[0] == Catch::Approx(-0.1));
    REQUIRE(r.hi[0] == Catch::Approx(1.1));
    REQUIRE(r.volume() == Catch::Approx(1.44));
}

TEST_CASE("zero-intensity process is empty", "[geometry]") {
    Rng rng(1);
    REQUIRE(sample_ppp(0.0, Region::unit_cube(2), BoundaryMode::Hard, 0.0, rng).points.empty());
    REQUIRE_THROWS_AS(
        sample_ppp(std::numeric_limits<double>::quiet_NaN(), Region::unit_cube(2),
                   BoundaryMode::Hard, 0.0, rng),
        std::invalid_argument);
}

TEST_CASE("dilated sampling window and count", "[geometry]") {
    Rng rng(2);
    const PointSample ps =
        sample_ppp(100.0, Region::unit_cube(2), BoundaryMode::Dilated, 0.1, rng);
    REQUIRE(ps.sampled_region.lo[0] == Catch::Approx(-0.1));
    REQUIRE(ps.sampled_region.hi[1] == Catch::Approx(1.1));
    for (const auto& p : ps.points) REQUIRE(ps.sampled_region.contains(p));
}

TEST_CASE("Poisson count calibration: mean 100 within 3 sigma over 1e4 draws", "[geometry]") {
    const Region square = Region::unit_cube(2);
    double total = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        Rng rng = Rng::substream(1234, i);
        total += static_cast<double>(
            sample_ppp(100.0, square, BoundaryMode::Hard, 0.0, rng).points.size());
    }
    const double mean = total / draws;
    REQUIRE(std::fabs(mean - 100.0) < 3.0 * std::sqrt(100.0) / std::sqrt(double(draws)));
}

TEST_CASE("seeded determinism: identical streams give bit-identical points", "[geometry]") {
    Rng a = Rng::substream(99, 4);
    Rng b = Rng::substream(99, 4);
    const auto pa = sample_ppp(50.0, Region::unit_cube(2), BoundaryMode::Dilated, 0.05, a);
    const auto pb = sample_ppp(50.0, Region::unit_cube(2), BoundaryMode::Dilated, 0.05, b);
    REQUIRE(pa.points.size() == pb.points.size());
    for (std::size_t i = 0; i < pa.points.size(); ++i) {
        REQUIRE(pa.points[i][0] == pb.points[i][0]);
        REQUIRE(pa.points[i][1] == pb.points[i][1]);
    }
}

TEST_CASE("disc overlap closed form", "[geometry]") {
    const auto disc = ShapeSpec::disc(2, 1.0);
    REQUIRE(pair_intersection_mean(disc, 0.0) == Catch::Approx(std::numbers::pi));
    REQUIRE(pair_intersection_mean(disc, 2.0) == 0.0);
    REQUIRE(pair_intersection_mean(disc, 5.0) == 0.0);
    REQUIRE(pair_intersection_mean(disc, 1.0) ==
            Catch::Approx(2.0 * std::numbers::pi / 3.0 - std::sqrt(3.0) / 2.0));
    // 1-d and 3-d variants
    REQUIRE(pair_intersection_mean(ShapeSpec::disc(1, 1.0), 0.5) == Catch::Approx(1.5));
    REQUIRE(pair_intersection_mean(ShapeSpec::disc(3, 1.0), 0.0) ==
            Catch::Approx(4.0 * std::numbers::pi / 3.0));
    // scaled shape: delta^d scaling at scaled separation
    const auto scaled = ShapeSpec::disc(2, 1.0, 0.5);
    REQUIRE(pair_intersection_mean(scaled, 0.5) ==
            Catch::Approx(0.25 * pair_intersection_mean(disc, 1.0)));
}

TEST_CASE("complement overlap identity", "[geometry]") {
    const auto disc = ShapeSpec::disc(2, 1.0);
    REQUIRE(complement_intersection_mean(disc, 0.0) == 0.0);
    REQUIRE(complement_intersection_mean(disc, 2.5) == Catch::Approx(std::numbers::pi));
    REQUIRE(complement_intersection_mean(disc, 1.0) ==
            Catch::Approx(std::numbers::pi - 1.2283696986087567));
}

TEST_CASE("overlap is monotone non-increasing in |y|", "[geometry]") {
    const auto disc = ShapeSpec::disc(2, 0.7);
    const auto square = ShapeSpec::square(2, 0.9);
    double prev_d = pair_intersection_mean(disc, 0.0);
    double prev_s = pair_intersection_mean(square, 0.0);
    for (int i = 1; i <= 100; ++i) {
        const double s = 2.0 * i / 100.0;
        const double d_now = pair_intersection_mean(disc, s);
        const double s_now = pair_intersection_mean(square, Point{s / std::numbers::sqrt2,
                                                                  s / std::numbers::sqrt2, 0.0});
        REQUIRE(d_now <= prev_d + 1e-15);
        REQUIRE(s_now <= prev_s + 1e-15);
        prev_d = d_now;
        prev_s = s_now;
    }
}

TEST_CASE("closed-form overlap agrees with Monte-Carlo hit sampling", "[geometry]") {
    const auto disc = ShapeSpec::disc(2, 1.0);
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double sep = rng.uniform(0.0, 2.2);
        const Point y{sep * std::cos(angle), sep * std::sin(angle), 0.0};
        const auto mc = pair_intersection_mean_mc(disc, y, 1000000, rng);
        const double exact = pair_intersection_mean(disc, y);
        REQUIRE(std::fabs(mc.value - exact) <= 3.0 * mc.std_error + 1e-9);
    }
}

TEST_CASE("generic shapes use the oracle", "[geometry]") {
    // unit-radius disc expressed as a generic membership oracle
    auto oracle = [](const Point& p) { return p[0] * p[0] + p[1] * p[1] <= 1.0; };
    const auto gen = ShapeSpec::generic(2, oracle, 1.0, std::numbers::pi, 0.5);
    REQUIRE(covers(Point{0.49, 0.0, 0.0}, Point{0.0, 0.0, 0.0}, gen));
    REQUIRE_FALSE(covers(Point{0.51, 0.0, 0.0}, Point{0.0, 0.0, 0.0}, gen));
    REQUIRE_THROWS_AS(pair_intersection_mean(gen, 0.1), std::invalid_argument);
    Rng rng(8);
    const auto mc = pair_intersection_mean_mc(gen, Point{0.5, 0.0, 0.0}, 200000, rng);
    const double exact = pair_intersection_mean(ShapeSpec::disc(2, 1.0, 0.5), 0.5);
    REQUIRE(std::fabs(mc.value - exact) <= 4.0 * mc.std_error);
}

TEST_CASE("covers respects the closed-set convention", "[geometry]") {
    const auto disc = ShapeSpec::disc(2, 0.1);
    REQUIRE(covers(Point{0.5, 0.5, 0.0}, Point{0.5, 0.5, 0.0}, disc));
    REQUIRE(covers(Point{0.6, 0.5, 0.0}, Point{0.5, 0.5, 0.0}, disc));
    REQUIRE_FALSE(covers(Point{0.6000001, 0.5, 0.0}, Point{0.5, 0.5, 0.0}, disc));
    const auto sq = ShapeSpec::square(2, 0.2);
    REQUIRE(covers(Point{0.1, 0.1, 0.0}, Point{0.0, 0.0, 0.0}, sq));
    REQUIRE_FALSE(covers(Point{0.100001, 0.0, 0.0}, Point{0.0, 0.0, 0.0}, sq));
    // torus wrap
    REQUIRE(covers_torus(Point{0.99, 0.5, 0.0}, Point{0.01, 0.5, 0.0}, disc,
                         Region::unit_cube(2)));
}

TEST_CASE("two-circle crossings and boundary crossings", "[geometry]") {
    const Region big = Region::box(2, {-10.0, -10.0, 0.0}, {10.0, 10.0, 0.0});
    const auto xs = circle_crossings({Point{0, 0, 0}, Point{1, 0, 0}}, 1.0, big);
    REQUIRE(xs.size() == 2);
    for (const auto& x : xs) {
        REQUIRE(x.p[0] == Catch::Approx(0.5));
        REQUIRE(std::fabs(x.p[1]) == Catch::Approx(std::sqrt(3.0) / 2.0));
        REQUIRE(x.kind == CrossingKind::DiscDisc);
    }
    // one disc touching the left edge of the unit square
    const auto bx = circle_crossings({Point{0.0, 0.5, 0.0}}, 0.2, Region::unit_cube(2));
    REQUIRE(bx.size() == 2);
    for (const auto& x : bx) {
        REQUIRE(x.p[0] == 0.0);
        REQUIRE((x.p[1] == Catch::Approx(0.3) || x.p[1] == Catch::Approx(0.7)));
        REQUIRE(x.kind == CrossingKind::DiscBoundary);
    }
    // no pair, no boundary contact
    REQUIRE(circle_crossings({}, 0.1, Region::unit_cube(2)).empty());
    REQUIRE(circle_crossings({Point{0.5, 0.5, 0.0}}, 0.1, Region::unit_cube(2)).empty());
}

TEST_CASE("crossing counts satisfy the per-disc bounds on random fields", "[geometry]") {
    const Region square = Region::unit_cube(2);
    for (int trial = 0; trial < 10; ++trial) {
        Rng rng = Rng::substream(777, trial);
        const auto ps = sample_ppp(80.0, square, BoundaryMode::Hard, 0.0, rng);
        const double r = 0.12;
        std::size_t disc_disc = 0, boundary = 0;
        for_each_crossing(ps.points, r, square, [&](const Crossing& x) {
            REQUIRE(square.contains(x.p, 1e-12));
            if (x.kind == CrossingKind::DiscDisc)
                ++disc_disc;
            else
                ++boundary;
            return true;
        });
        const std::size_t n = ps.points.size();
        REQUIRE(disc_disc <= n * (n - 1));
        std::size_t near_boundary = 0;
        for (const auto& p : ps.points) {
            const bool near = p[0] <= r || p[0] >= 1.0 - r || p[1] <= r || p[1] >= 1.0 - r;
            if (near) ++near_boundary;
        }
        REQUIRE(boundary <= 8 * near_boundary);
    }
}

TEST_CASE("tangent circles yield a single crossing", "[geometry]") {
    const Region big = Region::box(2, {-10.0, -10.0, 0.0}, {10.0, 10.0, 0.0});
    const auto xs = circle_crossings({Point{0, 0, 0}, Point{2, 0, 0}}, 1.0, big);
    REQUIRE(xs.size() == 1);
    REQUIRE(xs[0].p[0] == Catch::Approx(1.0));
}
