#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "mpb/quadrature.hpp"

using namespace mpb;

TEST_CASE("known integrals", "[quadrature]") {
    auto q1 = integrate([](double x) { return x * x; }, 0.0, 1.0);
    REQUIRE(std::fabs(q1.value - 1.0 / 3.0) < 1e-12);
    auto q2 = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    REQUIRE(std::fabs(q2.value - 2.0) < 1e-10);
    REQUIRE(q2.converged);
    auto q3 = integrate([](double) { return 1.0; }, 2.0, 2.0);
    REQUIRE(q3.value == 0.0);
}

TEST_CASE("error estimate covers the actual error", "[quadrature]") {
    // peaked but smooth integrand
    auto f = [](double x) { return std::exp(-50.0 * (x - 0.37) * (x - 0.37)); };
    const double exact = std::sqrt(std::numbers::pi / 50.0) / 2.0 *
                         (std::erf((1.0 - 0.37) * std::sqrt(50.0)) -
                          std::erf((0.0 - 0.37) * std::sqrt(50.0)));
    auto q = integrate(f, 0.0, 1.0);
    REQUIRE(std::fabs(q.value - exact) <= std::max(q.error * 10.0, 1e-12));
}

TEST_CASE("halving tolerances moves the result less than the reported error", "[quadrature]") {
    auto f = [](double x) { return std::sqrt(x) * std::cos(7.0 * x); };
    QuadratureConfig loose{1e-7, 1e-6, 40};
    QuadratureConfig tight{5e-8, 5e-7, 40};
    auto ql = integrate(f, 0.0, 2.0, loose);
    auto qt = integrate(f, 0.0, 2.0, tight);
    REQUIRE(std::fabs(ql.value - qt.value) <= ql.error + qt.error);
}

TEST_CASE("max_depth exhaustion is reported, with a partial value", "[quadrature]") {
    QuadratureConfig cramped{1e-15, 1e-15, 3};
    auto q = integrate([](double x) { return std::sin(40.0 * x) + 1.0; }, 0.0, 3.0, cramped);
    REQUIRE_FALSE(q.converged);
    REQUIRE(std::isfinite(q.value));
}
