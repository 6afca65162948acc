#include <catch2/catch_amalgamated.hpp>

#include "mpb/experiments.hpp"
#include "mpb/report_io.hpp"

using namespace mpb;

TEST_CASE("vacancy sweep at reduced scale", "[experiments]") {
    VacancySweepConfig cfg;
    cfg.lambda_ladder = {200.0, 800.0};
    cfg.ks = {1, 3};
    cfg.variance_ks = {1};
    cfg.variance_rtol = 0.30;  // wide: plumbing-level M; acceptance pins 0.10 at scale
    cfg.resolution = 512;
    cfg.replications = 200;
    cfg.workers = 2;
    cfg.seed = 101;
    const SuiteResult r = run_vacancy_sweep(cfg);
    INFO(r.report.dump(2));
    REQUIRE(r.passed);
    REQUIRE(r.csv.lines.size() == 2 * 200 * 2);
    REQUIRE(r.report["points"].size() == 4);
}

TEST_CASE("reports are byte-identical across worker counts", "[experiments]") {
    VacancySweepConfig cfg;
    cfg.lambda_ladder = {300.0};
    cfg.ks = {1};
    cfg.resolution = 256;
    cfg.replications = 64;
    cfg.seed = 9;
    cfg.workers = 1;
    const SuiteResult a = run_vacancy_sweep(cfg);
    cfg.workers = 4;
    const SuiteResult b = run_vacancy_sweep(cfg);
    REQUIRE(render_report(a, cfg.seed) == render_report(b, cfg.seed));
    REQUIRE(render_csv(a, cfg.seed) == render_csv(b, cfg.seed));
}

TEST_CASE("clt check enforces its preconditions", "[experiments]") {
    CltConfig cfg;
    cfg.replications = 10;
    REQUIRE_THROWS_AS(run_clt_check(cfg), std::invalid_argument);
    cfg.replications = 2000;
    cfg.lambda = 0.0;
    REQUIRE_THROWS_AS(run_clt_check(cfg), std::invalid_argument);
}

TEST_CASE("clt check at reduced scale", "[experiments]") {
    CltConfig cfg;
    cfg.lambda = 500.0;
    cfg.resolution = 512;
    cfg.replications = 1000;
    cfg.workers = 2;
    cfg.seed = 55;
    cfg.skew_tol = 0.5;   // skewness decays like lambda^{-1/2}; 500 is small
    cfg.kurt_tol = 1.0;
    const SuiteResult r = run_clt_check(cfg);
    INFO(r.report.dump(2));
    REQUIRE(r.passed);
}

TEST_CASE("bounds suite brackets a single grid point", "[experiments]") {
    BoundsConfig cfg;
    cfg.lambdas = {100.0};
    cfg.u_list = {std::log(100.0) + 2.0 * std::log(std::log(100.0))};
    cfg.replications = 400;
    cfg.workers = 2;
    cfg.seed = 77;
    const SuiteResult r = run_bounds_check(cfg);
    INFO(r.report.dump(2));
    REQUIRE(r.passed);
    REQUIRE(r.report["points"][0]["p_uncovered"].get<double>() >= 0.0);
}

TEST_CASE("threshold trend at reduced scale", "[experiments]") {
    BoundsConfig cfg;
    cfg.lambdas = {};
    cfg.u_list = {};
    cfg.threshold_lambdas = {300.0, 10000.0};
    cfg.threshold_replications = 250;
    cfg.workers = 2;
    cfg.seed = 78;
    const SuiteResult r = run_bounds_check(cfg);
    INFO(r.report.dump(2));
    REQUIRE(r.passed);
}

TEST_CASE("critical radius suite at reduced scale", "[experiments]") {
    CriticalRadiusConfig cfg;
    cfg.n_ladder = {100.0, 3000.0};
    cfg.replications = 25;
    cfg.tol = 1e-5;
    cfg.workers = 2;
    cfg.seed = 91;
    const SuiteResult r = run_critical_radius_scaling(cfg);
    INFO(r.report.dump(2));
    REQUIRE(r.passed);
    const double m0 = r.report["points"][0]["ratio"]["mean"].get<double>();
    const double m1 = r.report["points"][1]["ratio"]["mean"].get<double>();
    REQUIRE(m0 > m1);
}

TEST_CASE("path suite at reduced scale", "[experiments]") {
    PathSuiteConfig cfg;
    cfg.mean_replications = 3000;
    cfg.scaling_deltas = {0.05};
    cfg.scaling_replications = 4000;
    cfg.scaling_rtol = 0.30;
    cfg.long_Ts = {20.0, 80.0};
    cfg.long_replications = 1200;
    cfg.long_var_rtol = 0.30;
    cfg.workers = 2;
    cfg.seed = 303;
    const SuiteResult r = run_path_suite(cfg);
    INFO(r.report.dump(2));
    REQUIRE(r.passed);
    // the report records both SLLN candidates (paper prints a 1/c factor)
    REQUIRE(r.report["mean_phase"].contains("sl_limit_with_paper_1_over_c"));
}

TEST_CASE("oracle d=1 suite at reduced scale", "[experiments]") {
    Oracle1DConfig cfg;
    cfg.replications = 150000;
    cfg.workers = 2;
    cfg.seed = 404;
    const SuiteResult r = run_oracle_1d(cfg);
    INFO(r.report.dump(2));
    REQUIRE(r.passed);
}

TEST_CASE("suite reports echo a re-parseable config", "[experiments]") {
    VacancySweepConfig cfg;
    cfg.lambda_ladder = {150.0};
    cfg.ks = {2};
    cfg.resolution = 128;
    cfg.replications = 16;
    cfg.seed = 1;
    const SuiteResult r = run_vacancy_sweep(cfg);
    std::map<std::string, std::string> flat;
    for (const auto& [k, v] : r.report["config"].items()) flat[k] = v.get<std::string>();
    Config echoed = Config::from_flat_map(flat);
    VacancySweepConfig round = VacancySweepConfig::from_config(echoed);
    echoed.ensure_all_consumed();
    REQUIRE(round.flat() == flat);
    // hash equality between the report and the re-parsed map
    std::string canon;
    for (const auto& [k, v] : flat) canon += k + "=" + v + "\n";
    REQUIRE(r.report["config_hash"].get<std::string>() == to_hex(fnv1a64(canon)));
}
