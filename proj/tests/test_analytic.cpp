#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "mpb/analytic.hpp"

using namespace mpb;
using namespace mpb::analytic;

namespace {
const ShapeSpec kUnitDisc = ShapeSpec::disc(2, 1.0);
}

TEST_CASE("expected_chi_m", "[analytic]") {
    REQUIRE(expected_chi_m(0.0, 0) == 1.0);
    REQUIRE(expected_chi_m(0.0, 3) == 0.0);
    REQUIRE(expected_chi_m(1.0, 1) == Catch::Approx(std::exp(-1.0)));
    REQUIRE(expected_chi_m(0.785398, 0) == Catch::Approx(0.455938).margin(1e-6));
    REQUIRE_THROWS_AS(expected_chi_m(-1.0, 0), std::invalid_argument);
    // log-space evaluation survives large arguments (value frozen from a
    // 30-digit evaluation of e^{-50} 50^50 / 50!)
    REQUIRE(expected_chi_m(50.0, 50) == Catch::Approx(0.056325006325190825).epsilon(1e-12));
}

TEST_CASE("pmf sums to one", "[analytic]") {
    for (double lb : {0.5, 5.0, 20.0}) {
        double sum = 0.0;
        for (int m = 0; m <= 60; ++m) sum += expected_chi_m(lb, m);
        REQUIRE(std::fabs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("expected_vacancy_k", "[analytic]") {
    REQUIRE(expected_vacancy_k(0.0, 3, 2.5) == 2.5);
    REQUIRE(expected_vacancy_k(1.0, 1, 1.0) == Catch::Approx(std::exp(-1.0)));
    REQUIRE(expected_vacancy_k(1.0, 2, 1.0) == Catch::Approx(2.0 * std::exp(-1.0)));
    REQUIRE_THROWS_AS(expected_vacancy_k(1.0, 0, 1.0), std::invalid_argument);
}

TEST_CASE("pair_cover_probability closed forms", "[analytic]") {
    const double beta = std::numbers::pi;
    REQUIRE(pair_cover_probability(1.0, kUnitDisc, 0, 0, Point{3.0, 0.0, 0.0}) ==
            Catch::Approx(std::exp(-2.0 * beta)));
    REQUIRE(pair_cover_probability(1.0, kUnitDisc, 0, 0, Point{0.0, 0.0, 0.0}) ==
            Catch::Approx(std::exp(-beta)));
    const double b1 = pair_intersection_mean(kUnitDisc, 1.0);
    REQUIRE(pair_cover_probability(1.0, kUnitDisc, 0, 0, Point{1.0, 0.0, 0.0}) ==
            Catch::Approx(std::exp(-2.0 * beta + b1)));
    REQUIRE(pair_cover_probability(1.0, kUnitDisc, 0, 0, Point{1.0, 0.0, 0.0}) ==
            Catch::Approx(0.006384).margin(1e-5));
}

TEST_CASE("pair_cover_probability sums to one over (m,n)", "[analytic]") {
    for (double lambda : {0.5, 1.5}) {
        for (double sep : {0.0, 0.7, 1.4, 3.0}) {
            double sum = 0.0;
            for (int m = 0; m <= 60; ++m)
                for (int n = 0; n <= 60; ++n)
                    sum += pair_cover_probability(lambda, kUnitDisc, m, n,
                                                  Point{sep, 0.0, 0.0});
            REQUIRE(std::fabs(sum - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("covariance of point vacancies", "[analytic]") {
    // disjoint dependence ranges: exactly zero
    REQUIRE(covariance_vk_points(1.0, kUnitDisc, 1, Point{2.0, 0.0, 0.0}) == 0.0);
    REQUIRE(covariance_vk_points(1.0, kUnitDisc, 3, Point{5.0, 1.0, 0.0}) == 0.0);
    // coincident points: Bernoulli variance
    const double beta = std::numbers::pi;
    REQUIRE(covariance_vk_points(1.0, kUnitDisc, 1, Point{0.0, 0.0, 0.0}) ==
            Catch::Approx(std::exp(-beta) - std::exp(-2.0 * beta)));
    REQUIRE(covariance_vk_points(1.0, kUnitDisc, 1, Point{1.0, 0.0, 0.0}) ==
            Catch::Approx(0.004517).margin(1e-5));
    // symmetry in y <-> -y
    for (double a : {0.3, 1.1}) {
        const Point y{a, 0.5 * a, 0.0};
        const Point ny{-a, -0.5 * a, 0.0};
        REQUIRE(covariance_vk_points(2.0, kUnitDisc, 3, y) ==
                Catch::Approx(covariance_vk_points(2.0, kUnitDisc, 3, ny)));
    }
}

TEST_CASE("variance_vk basics", "[analytic]") {
    PBParams p;
    p.lambda = 0.0;
    p.shape = ShapeSpec::disc(2, 1.0, 0.1);
    p.region = Region::unit_cube(2);
    p.k = 1;
    REQUIRE(variance_vk(p).value == 0.0);

    // shrinking r at fixed lambda*beta: variance decreases to 0
    double prev = std::numeric_limits<double>::infinity();
    for (double r : {0.2, 0.1, 0.05, 0.025}) {
        PBParams q;
        q.k = 1;
        q.shape = ShapeSpec::disc(2, r, 1.0);
        q.lambda = 1.0 / (std::numbers::pi * r * r);  // lambda*beta == 1
        q.region = Region::unit_cube(2);
        const double v = variance_vk(q).value;
        REQUIRE(v >= 0.0);
        REQUIRE(v < prev);
        prev = v;
    }
}

TEST_CASE("variance_vk square tensor path matches the radial path for discs", "[analytic]") {
    // d=1: any shape is radial; compare interval (disc) against square of the
    // same footprint, which must integrate identically
    PBParams disc1;
    disc1.k = 2;
    disc1.lambda = 2.0;
    disc1.shape = ShapeSpec::disc(1, 0.25, 1.0);
    disc1.region = Region::unit_cube(1);
    PBParams sq1 = disc1;
    sq1.shape = ShapeSpec::square(1, 0.5, 1.0);
    REQUIRE(variance_vk(disc1).value == Catch::Approx(variance_vk(sq1).value).epsilon(1e-9));
    // d=2 square runs and is positive
    PBParams sq2;
    sq2.k = 1;
    sq2.lambda = 30.0;
    sq2.shape = ShapeSpec::square(2, 0.1, 1.0);
    sq2.region = Region::unit_cube(2);
    REQUIRE(variance_vk(sq2).value > 0.0);
}

TEST_CASE("sigma2_limit", "[analytic]") {
    REQUIRE(sigma2_limit(0.0, kUnitDisc, 1).value == 0.0);
    const auto s2 = sigma2_limit(1.0, kUnitDisc, 1);
    REQUIRE(s2.value > 0.0);
    REQUIRE(s2.converged);
    // k=1 integrand is e^{rho E|B1|} - 1 >= 0: radial integral bounded by the
    // full-ball bound
    const double max_integrand = std::exp(std::numbers::pi) - 1.0;
    REQUIRE(s2.value <=
            std::exp(-2.0 * std::numbers::pi) * max_integrand * std::numbers::pi * 4.0 + 1e-9);

    // scaled-variance oracle: lambda * Var(V_k) -> sigma^2 within 5% at
    // lambda = 1000 (quadrature both sides)
    PBParams p;
    p.lambda = 1000.0;
    p.rho = 1.0;
    p.k = 1;
    p.shape = ShapeSpec::disc(2, 1.0, 1.0 / std::sqrt(1000.0));
    p.region = Region::unit_cube(2);
    const double lv = 1000.0 * variance_vk(p).value;
    REQUIRE(std::fabs(lv - s2.value) < 0.05 * s2.value);
}

TEST_CASE("sigma2_limit for squares", "[analytic]") {
    const auto s = sigma2_limit(0.8, ShapeSpec::square(2, 1.0), 2);
    REQUIRE(s.value > 0.0);
    REQUIRE(s.converged);
}

TEST_CASE("coverage_bounds", "[analytic]") {
    const double r = std::sqrt(5.0 / (100.0 * std::numbers::pi));
    const auto b = coverage_bounds(100.0, r, 1);
    REQUIRE(b.theta == Catch::Approx(2.3746).margin(2e-4));
    REQUIRE(b.lower == Catch::Approx(0.29633).margin(2e-5));
    REQUIRE(b.upper_raw == Catch::Approx(7.091).margin(2e-3));
    // exponential dominance: upper -> 0 as lambda pi r^2 grows
    double prev = std::numeric_limits<double>::infinity();
    for (double u : {10.0, 20.0, 40.0}) {
        const double rr = std::sqrt(u / (1000.0 * std::numbers::pi));
        const double up = coverage_bounds(1000.0, rr, 1).upper_raw;
        REQUIRE(up < prev);
        prev = up;
    }
    REQUIRE_THROWS_AS(coverage_bounds(10.0, 0.6, 1), std::invalid_argument);  // pi r^2 > 1
}

TEST_CASE("critical radius thresholds", "[analytic]") {
    REQUIRE(critical_radius_sq(1e4, 1, 0.0) == Catch::Approx(3.6385e-4).margin(1e-8));
    REQUIRE(critical_radius_sq(1e3, 0, 0.0) ==
            Catch::Approx(std::log(1e3) / (std::numbers::pi * 1e3)));
    REQUIRE(sup_critical_radius_sq(100.0, 1, 0.0) ==
            Catch::Approx(sub_critical_radius_sq(100.0, 1, 0.0)));
    REQUIRE(sup_critical_radius_sq(100.0, 1, 0.2) > sub_critical_radius_sq(100.0, 1, 0.2));
    REQUIRE_THROWS_AS(critical_radius_sq(2.0, 1, 0.0), std::invalid_argument);
}

TEST_CASE("on/off transition probabilities", "[analytic]") {
    REQUIRE(onoff_transition(0, 0, 0.0, 1.0, 2.0) == 1.0);
    REQUIRE(onoff_transition(1, 1, 0.0, 1.0, 2.0) == 1.0);
    REQUIRE(onoff_transition(0, 0, std::log(2.0), 1.0, 1.0) == Catch::Approx(0.625));
    // ergodic limit at t = 100/gamma
    const OnOffParams oo = OnOffParams::from_rates(2.0, 1.0);
    REQUIRE(std::fabs(onoff_transition(0, 0, 100.0 / oo.gamma, oo) - oo.p0) < 1e-12);
    REQUIRE(std::fabs(onoff_transition(1, 1, 100.0 / oo.gamma, oo) - oo.p1) < 1e-12);
    // rows sum to one
    for (double t : {0.0, 0.3, 2.0})
        for (int j : {0, 1})
            REQUIRE(onoff_transition(j, 0, t, oo) + onoff_transition(j, 1, t, oo) ==
                    Catch::Approx(1.0));
    REQUIRE_THROWS_AS(onoff_transition(0, 0, -1.0, 1.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(onoff_transition(0, 0, 1.0, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("expected_vt", "[analytic]") {
    REQUIRE(expected_vt(2.0, 0.0, 0.5, 0.1) == 2.0);
    REQUIRE(expected_vt(2.0, 5.0, 0.0, 0.1) == 2.0);
    REQUIRE(expected_vt(1.0, 1.0, 1.0, 1.0) == Catch::Approx(std::exp(-1.0)));
}

TEST_CASE("variance_vt basics", "[analytic]") {
    const auto shape = ShapeSpec::disc(2, 0.1, 1.0);
    REQUIRE(variance_vt(1.0, 0.0, shape, 1.0, OnOffParams::from_rates(1.0, 1.0)).value == 0.0);
    const auto v = variance_vt(1.0, 50.0, shape, 1.0, OnOffParams::from_rates(1.0, 1.0));
    REQUIRE(v.value > 0.0);
    REQUIRE(v.converged);
    // beyond the window the covariance integrand vanishes pointwise
    REQUIRE(pair_intersection_mean(shape, 2.0 * shape.reach()) == 0.0);
    REQUIRE(pair_intersection_mean(shape, 2.0 * shape.reach() + 0.05) == 0.0);
}

TEST_CASE("sigma1_sq special structure", "[analytic]") {
    const auto disc = ShapeSpec::disc(2, 1.0);
    REQUIRE(sigma1_sq(1.0, 1.0, 0.0, disc, 1.0, 0.5).value == 0.0);
    // p1 = 1: independent of a0
    const double v0 = sigma1_sq(0.0, 1.0, 1.0, disc, 1.0, 1.0).value;
    const double v1 = sigma1_sq(1.0, 1.0, 1.0, disc, 1.0, 1.0).value;
    const double vi =
        sigma1_sq(std::numeric_limits<double>::infinity(), 1.0, 1.0, disc, 1.0, 1.0).value;
    REQUIRE(v0 == Catch::Approx(v1).epsilon(1e-12));
    REQUIRE(v0 == Catch::Approx(vi).epsilon(1e-12));
    // monotone in a0 at p1 = 0.5
    const double m0 = sigma1_sq(0.0, 1.0, 1.0, disc, 1.0, 0.5).value;
    const double m1 = sigma1_sq(1.0, 1.0, 1.0, disc, 1.0, 0.5).value;
    const double mi =
        sigma1_sq(std::numeric_limits<double>::infinity(), 1.0, 1.0, disc, 1.0, 0.5).value;
    REQUIRE(m0 > m1);
    REQUIRE(m1 > mi);
    REQUIRE_THROWS_AS(sigma1_sq(-1.0, 1.0, 1.0, disc, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("sigma2_sq equals sigma1_sq under the substitution", "[analytic]") {
    Rng rng(33);
    for (int trial = 0; trial < 5; ++trial) {
        const double lambda = rng.uniform(5.0, 60.0);
        const double r = rng.uniform(0.05, 0.3);
        const double c = rng.uniform(0.5, 2.0);
        const double mu0 = rng.uniform(0.2, 3.0);
        const double mu1 = rng.uniform(0.2, 3.0);
        const auto shape = ShapeSpec::disc(2, r);
        const OnOffParams oo = OnOffParams::from_rates(mu0, mu1);
        const double s2 = sigma2_sq(lambda, shape, c, mu0, mu1).value;
        const double s1 = sigma1_sq(oo.gamma, 1.0, lambda, shape, c, oo.p1).value;
        REQUIRE(s2 == Catch::Approx(s1).epsilon(1e-10));
    }
}

TEST_CASE("quadrature tolerance halving stays within reported error", "[analytic]") {
    PBParams p;
    p.lambda = 100.0;
    p.rho = 1.0;
    p.k = 2;
    p.shape = ShapeSpec::disc(2, 1.0, 0.1);
    p.region = Region::unit_cube(2);
    QuadratureConfig loose{1e-8, 1e-6, 40};
    QuadratureConfig tight{5e-9, 5e-7, 40};
    const auto a = variance_vk(p, loose);
    const auto b = variance_vk(p, tight);
    REQUIRE(std::fabs(a.value - b.value) <= a.error + b.error + 1e-15);
}
