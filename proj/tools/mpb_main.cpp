// mpb: Poisson-Boolean / Markov-Poisson-Boolean coverage toolkit.
//
// Subcommands: analytic (one-shot closed-form evaluations), vacancy, clt,
// bounds, critical-radius, path (Monte-Carlo verification suites driven by
// a config file), selftest.
//
// Exit codes: 0 success, 1 usage/config error, 2 suite assertions failed.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mpb/analytic.hpp"
#include "mpb/experiments.hpp"
#include "mpb/report_io.hpp"
#include "mpb/simulator.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string format = "both";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "experiment config file (ini-style)");
    cmd->add_option("--out", o.out_dir, "output directory for report.json / rows.csv");
    cmd->add_option("--format", o.format, "csv|json|both")->default_val("both");
    cmd->add_option("--seed", o.seed, "master seed (overrides MPB_SEED and config)")
        ->each([&o](const std::string&) { o.seed_set = true; });
    cmd->add_option("--workers", o.workers, "worker threads (no effect on output bytes)")
        ->default_val(1);
}

// Seed precedence: CLI flag > MPB_SEED env > config file > fixed default.
std::uint64_t resolve_seed(const CommonOpts& o, mpb::Config& cfg) {
    const std::uint64_t from_cfg = cfg.get_u64("experiment.seed", kDefaultSeed);
    if (o.seed_set) return o.seed;
    if (const char* env = std::getenv("MPB_SEED")) {
        try {
            return std::stoull(env, nullptr, 0);
        } catch (const std::exception&) {
            throw mpb::ConfigError(std::string("MPB_SEED is not an integer: ") + env);
        }
    }
    return from_cfg;
}

mpb::Config load_config_or_empty(const CommonOpts& o) {
    if (o.config_path.empty()) return mpb::Config::parse_string("", "<defaults>");
    if (!std::filesystem::exists(o.config_path))
        throw mpb::ConfigError("config file not found: " + o.config_path);
    return mpb::Config::parse_file(o.config_path);
}

int emit_and_report(const mpb::SuiteResult& res, const CommonOpts& o, std::uint64_t seed,
                    const std::string& subcommand, double wall_s) {
    std::printf("seed=%llu config-hash=%s\n", static_cast<unsigned long long>(seed),
                res.report.at("config_hash").get<std::string>().c_str());
    for (const auto& c : res.report.at("criteria"))
        std::printf("[%s] %s\n", c.at("pass").get<bool>() ? "PASS" : "FAIL",
                    c.at("name").get<std::string>().c_str());
    if (!o.out_dir.empty()) {
        const auto files =
            mpb::emit_outputs(res, seed, o.out_dir, mpb::parse_format(o.format));
        mpb::write_manifest(o.out_dir, subcommand, o.config_path, seed, o.workers, files, wall_s);
        for (const auto& f : files)
            std::printf("wrote %s (%zu bytes, %s)\n", f.name.c_str(), f.bytes, f.hash.c_str());
    }
    std::printf("%s: %s\n", subcommand.c_str(), res.passed ? "all criteria passed" : "CRITERIA FAILED");
    return res.passed ? 0 : 2;
}

template <typename ConfigT, typename RunF>
int run_suite(const CommonOpts& o, const std::string& name, RunF&& run) {
    mpb::Config cfg = load_config_or_empty(o);
    const std::uint64_t seed = resolve_seed(o, cfg);
    ConfigT suite_cfg = ConfigT::from_config(cfg);
    cfg.ensure_all_consumed();
    suite_cfg.seed = seed;
    suite_cfg.workers = o.workers;
    const auto t0 = std::chrono::steady_clock::now();
    const mpb::SuiteResult res = run(suite_cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit_and_report(res, o, seed, name, wall);
}

// ---------------------------------------------------------------------------
// analytic subcommand
// ---------------------------------------------------------------------------

struct AnalyticOpts {
    std::string eval;
    double lambda_beta = 1.0;
    int k = 1;
    double volume = 1.0;
    double rho = 1.0;
    double radius = 1.0;
    double side = 0.0;   // > 0 selects the square shape
    int dims = 2;
    double lambda = 1.0;
    double r = 0.1;
    double n = 1e4;
    double cn = 0.0;
    double t = 0.0;
    double mu0 = 1.0;
    double mu1 = 1.0;
    int j = 0;
    int jj = 0;
    double T = 1.0;
    double c = 1.0;
    double p1 = 0.5;
    std::string a0 = "0";
    double delta = 1.0;
    double sep = 0.0;
};

double parse_a0(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

mpb::ShapeSpec make_shape(const AnalyticOpts& a) {
    if (a.side > 0.0) return mpb::ShapeSpec::square(a.dims, a.side, a.delta);
    return mpb::ShapeSpec::disc(a.dims, a.radius, a.delta);
}

int run_analytic(const AnalyticOpts& a) {
    using namespace mpb::analytic;
    const auto print = [](double v) { std::printf("%.17g\n", v); };
    if (a.eval == "expected-vacancy") {
        print(expected_vacancy_k(a.lambda_beta, a.k, a.volume));
    } else if (a.eval == "expected-chi") {
        print(expected_chi_m(a.lambda_beta, a.k));
    } else if (a.eval == "pair-overlap") {
        print(mpb::pair_intersection_mean(make_shape(a), a.sep));
    } else if (a.eval == "sigma2-limit") {
        print(sigma2_limit(a.rho, make_shape(a), a.k, {}, a.volume).value);
    } else if (a.eval == "variance-vk") {
        mpb::PBParams p;
        p.lambda = a.lambda;
        p.rho = a.rho;
        p.k = a.k;
        p.shape = make_shape(a);
        p.region = mpb::Region::unit_cube(a.dims);
        print(variance_vk(p).value);
    } else if (a.eval == "coverage-bounds") {
        const auto b = coverage_bounds(a.lambda, a.r, a.k);
        std::printf("lower=%.17g upper=%.17g theta=%.17g\n", b.lower, b.upper_raw, b.theta);
    } else if (a.eval == "critical-radius-sq") {
        print(critical_radius_sq(a.n, a.k, a.cn));
    } else if (a.eval == "onoff-transition") {
        print(onoff_transition(a.j, a.jj, a.t, a.mu0, a.mu1));
    } else if (a.eval == "expected-vt") {
        print(expected_vt(a.T, a.lambda, a.p1, make_shape(a).scaled_beta()));
    } else if (a.eval == "variance-vt") {
        print(variance_vt(a.T, a.lambda, make_shape(a), a.c,
                          mpb::OnOffParams::from_rates(a.mu0, a.mu1))
                  .value);
    } else if (a.eval == "sigma1-sq") {
        print(sigma1_sq(parse_a0(a.a0), a.T, a.rho, make_shape(a), a.c, a.p1).value);
    } else if (a.eval == "sigma2-sq") {
        print(sigma2_sq(a.lambda, make_shape(a), a.c, a.mu0, a.mu1).value);
    } else {
        std::fprintf(stderr, "unknown --eval '%s'\n", a.eval.c_str());
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// selftest: the quick exact-example suite
// ---------------------------------------------------------------------------

int run_selftest() {
    using namespace mpb;
    int failures = 0;
    auto check = [&](bool ok, const char* name) {
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
        if (!ok) ++failures;
    };
    auto near = [](double a, double b, double tol) { return std::fabs(a - b) <= tol; };

    check(analytic::expected_chi_m(0.0, 0) == 1.0, "empty process covers nothing");
    check(near(analytic::expected_chi_m(1.0, 1), std::exp(-1.0), 1e-15), "Poisson pmf at 1");
    const auto disc = ShapeSpec::disc(2, 1.0);
    check(near(pair_intersection_mean(disc, 0.0), std::numbers::pi, 1e-12), "full self-overlap");
    check(pair_intersection_mean(disc, 2.0) == 0.0, "tangent discs overlap 0");
    check(complement_intersection_mean(disc, 0.0) == 0.0, "B2 empty at coincidence");
    check(covers(Point{0.1, 0.0, 0.0}, Point{0.0, 0.0, 0.0}, ShapeSpec::disc(2, 0.1)),
          "closed boundary counts as covered");
    check(!covers(Point{0.1000001, 0.0, 0.0}, Point{0.0, 0.0, 0.0}, ShapeSpec::disc(2, 0.1)),
          "outside boundary is uncovered");
    Rng rng(1);
    check(sample_ppp(0.0, Region::unit_cube(2), BoundaryMode::Hard, 0.0, rng).points.empty(),
          "zero-rate process is empty");
    check(near(analytic::expected_vacancy_k(1.0, 2, 1.0), 2.0 * std::exp(-1.0), 1e-15),
          "E V_2 at lambda beta = 1");
    check(near(analytic::onoff_transition(0, 0, 0.0, 1.0, 2.0), 1.0, 1e-15), "p_0(j,j) = 1");
    check(near(analytic::expected_vt(3.0, 5.0, 0.0, 0.1), 3.0, 1e-15), "always-off sensors: V_T = T");
    check(analytic::sigma2_limit(0.0, disc, 1).value == 0.0, "sigma2 at rho = 0");
    check(analytic::sigma1_sq(0.0, 1.0, 0.0, disc, 1.0, 0.5).value == 0.0, "sigma1 at rho = 0");
    SensorField empty_field;
    empty_field.shape = ShapeSpec::disc(2, 0.1);
    empty_field.region = Region::unit_cube(2);
    empty_field.sample.mode = BoundaryMode::Hard;
    check(vacancy_grid(empty_field, 1, 64).value == 1.0, "no sensors: vacancy = |R|");
    check(!is_fully_k_covered(empty_field, 1), "no sensors: not covered");
    PathSpec path;
    path.horizon = 1.0;
    check(path_vacancy(empty_field, path, kAlwaysOn, 1).value == 1.0, "no sensors: V_T = T");
    SensorField one = empty_field;
    one.sample.points = {Point{0.5, 0.0, 0.0}};
    check(near(path_vacancy(one, path, kAlwaysOn, 2).value, 1.0, 0.0), "k=2, one sensor: V_T = T");
    check(near(path_vacancy(one, path, kAlwaysOn, 1).value, 0.8, 1e-12),
          "hand window [0.4, 0.6]");
    std::printf("selftest: %s\n", failures == 0 ? "all passed" : "FAILURES");
    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Poisson-Boolean / Markov-Poisson-Boolean coverage toolkit"};
    app.require_subcommand(1);

    AnalyticOpts a;
    CLI::App* an = app.add_subcommand("analytic", "one-shot closed-form evaluations");
    an->add_option("--eval", a.eval,
                   "expected-vacancy|expected-chi|pair-overlap|sigma2-limit|variance-vk|"
                   "coverage-bounds|critical-radius-sq|onoff-transition|expected-vt|"
                   "variance-vt|sigma1-sq|sigma2-sq")
        ->required();
    an->add_option("--lambda-beta", a.lambda_beta, "coverage mean lambda*beta");
    an->add_option("--k", a.k, "coverage multiplicity k (or m for expected-chi)");
    an->add_option("--volume", a.volume, "|R|");
    an->add_option("--rho", a.rho, "limit of delta^d lambda");
    an->add_option("--radius", a.radius, "disc radius");
    an->add_option("--side", a.side, "square side (selects square shape)");
    an->add_option("--dims", a.dims, "dimension (1, 2 or 3)");
    an->add_option("--lambda", a.lambda, "intensity");
    an->add_option("--r", a.r, "disc radius for coverage-bounds");
    an->add_option("--n", a.n, "intensity n for critical-radius-sq");
    an->add_option("--cn", a.cn, "c_n offset for critical-radius-sq");
    an->add_option("--t", a.t, "transition time");
    an->add_option("--mu0", a.mu0, "off->on rate");
    an->add_option("--mu1", a.mu1, "on->off rate");
    an->add_option("--j", a.j, "from state");
    an->add_option("--jj", a.jj, "to state");
    an->add_option("--T", a.T, "path horizon");
    an->add_option("--c", a.c, "target speed");
    an->add_option("--p1", a.p1, "stationary on-probability");
    an->add_option("--a0", a.a0, "limit of delta*gamma(delta); 'inf' allowed");
    an->add_option("--delta", a.delta, "shape scale");
    an->add_option("--separation", a.sep, "separation |y| for pair-overlap");

    CommonOpts vac_o, clt_o, bnd_o, crit_o, path_o;
    CLI::App* vac = app.add_subcommand("vacancy", "vacancy sweep vs the SL/WL limits");
    add_common(vac, vac_o);
    CLI::App* clt = app.add_subcommand("clt", "CLT normality check of standardized V_k");
    add_common(clt, clt_o);
    CLI::App* bnd = app.add_subcommand("bounds", "coverage-probability bounds and threshold trend");
    add_common(bnd, bnd_o);
    CLI::App* crit = app.add_subcommand("critical-radius", "critical-radius ratio scaling");
    add_common(crit, crit_o);
    CLI::App* path = app.add_subcommand("path", "MPB path coverage suites");
    add_common(path, path_o);
    CLI::App* selftest = app.add_subcommand("selftest", "run the quick exact-example suite");
    (void)selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (an->parsed()) return run_analytic(a);
        if (vac->parsed())
            return run_suite<mpb::VacancySweepConfig>(vac_o, "vacancy", [](auto& c) {
                return mpb::run_vacancy_sweep(c);
            });
        if (clt->parsed())
            return run_suite<mpb::CltConfig>(clt_o, "clt",
                                             [](auto& c) { return mpb::run_clt_check(c); });
        if (bnd->parsed())
            return run_suite<mpb::BoundsConfig>(bnd_o, "bounds",
                                                [](auto& c) { return mpb::run_bounds_check(c); });
        if (crit->parsed())
            return run_suite<mpb::CriticalRadiusConfig>(crit_o, "critical-radius", [](auto& c) {
                return mpb::run_critical_radius_scaling(c);
            });
        if (path->parsed())
            return run_suite<mpb::PathSuiteConfig>(path_o, "path",
                                                   [](auto& c) { return mpb::run_path_suite(c); });
        if (selftest->parsed()) return run_selftest();
    } catch (const mpb::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
