#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mpb/dynamics.hpp"
#include "mpb/geometry.hpp"
#include "mpb/quadrature.hpp"

namespace mpb {

/// Poisson-Boolean model parameters. shape.delta carries the scale; rho is
/// the limit of delta^d * lambda in the scaling regime (bookkeeping for the
/// limit formulas).
struct PBParams {
    double lambda = 0.0;
    ShapeSpec shape = ShapeSpec::disc(2, 1.0);
    Region region = Region::unit_cube(2);
    int k = 1;
    double rho = 0.0;

    void validate() const {
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw std::invalid_argument("PBParams: lambda must be finite and >= 0");
        if (k < 1) throw std::invalid_argument("PBParams: k >= 1 required");
        if (!(rho >= 0.0) || !std::isfinite(rho))
            throw std::invalid_argument("PBParams: rho must be finite and >= 0");
        if (shape.dims != region.dims) throw std::invalid_argument("PBParams: dims mismatch");
        region.validate();
        shape.check();
    }
};

namespace analytic {

/// Compensated summation for the m,n double sums.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

/// e^{-mean} mean^m / m!, evaluated in log space.
inline double poisson_pmf(double mean, int m) {
    if (m < 0 || !(mean >= 0.0)) throw std::invalid_argument("poisson_pmf: bad arguments");
    if (mean == 0.0) return m == 0 ? 1.0 : 0.0;
    return std::exp(-mean + m * std::log(mean) - std::lgamma(m + 1.0));
}

/// P(a point is covered by exactly m sensors) for coverage mean lambda*beta.
inline double expected_chi_m(double lambda_beta, int m) { return poisson_pmf(lambda_beta, m); }

inline double poisson_cdf(double mean, int k_exclusive) {
    KahanSum s;
    for (int m = 0; m < k_exclusive; ++m) s.add(poisson_pmf(mean, m));
    return s.value();
}

/// E[V_k] = |R| * sum_{m<k} pmf(lambda_beta, m). Pass rho*beta to get the
/// scaling-limit value.
inline double expected_vacancy_k(double lambda_beta, int k, double volume) {
    if (k < 1) throw std::invalid_argument("expected_vacancy_k: k >= 1 required");
    if (!(lambda_beta >= 0.0)) throw std::invalid_argument("expected_vacancy_k: lambda_beta < 0");
    return volume * poisson_cdf(lambda_beta, k);
}

inline double expected_vacancy_k(const PBParams& p) {
    p.validate();
    return expected_vacancy_k(p.lambda * p.shape.scaled_beta(), p.k, p.region.volume());
}

/// E[chi_m(x1) chi_n(x2)] at separation y = x1 - x2 (scaled shape):
///   e^{-2 l b} e^{l b1} sum_l (l b1)^l / l! * (l b2)^{m+n-2l} / ((m-l)!(n-l)!)
inline double pair_cover_probability(double lambda, const ShapeSpec& shape, int m, int n,
                                     const Point& y) {
    if (m < 0 || n < 0) throw std::invalid_argument("pair_cover_probability: m, n >= 0");
    if (!(lambda >= 0.0)) throw std::invalid_argument("pair_cover_probability: lambda < 0");
    const double beta_d = shape.scaled_beta();
    const double b1 = pair_intersection_mean(shape, y);
    const double b2 = std::max(0.0, beta_d - b1);
    const double lb1 = lambda * b1;
    const double lb2 = lambda * b2;
    const double log_pref = -2.0 * lambda * beta_d + lb1;
    const double log_lb1 = lb1 > 0.0 ? std::log(lb1) : 0.0;
    const double log_lb2 = lb2 > 0.0 ? std::log(lb2) : 0.0;
    KahanSum sum;
    for (int l = 0; l <= std::min(m, n); ++l) {
        const int e2 = m + n - 2 * l;
        if (l > 0 && lb1 <= 0.0) continue;
        if (e2 > 0 && lb2 <= 0.0) continue;
        const double lt = log_pref + l * log_lb1 + e2 * log_lb2 - std::lgamma(l + 1.0) -
                          std::lgamma(m - l + 1.0) - std::lgamma(n - l + 1.0);
        sum.add(std::exp(lt));
    }
    return sum.value();
}

inline double pair_cover_probability(const PBParams& p, int m, int n, const Point& y) {
    p.validate();
    return pair_cover_probability(p.lambda, p.shape, m, n, y);
}

/// Cov(V_k(x1), V_k(x2)) at separation y; exactly 0 once |y| >= 2 tau delta.
inline double covariance_vk_points(double lambda, const ShapeSpec& shape, int k, const Point& y) {
    if (k < 1) throw std::invalid_argument("covariance_vk_points: k >= 1 required");
    const double reach = 2.0 * shape.reach();
    if (dist_sq(y, Point{0.0, 0.0, 0.0}, shape.dims) >= reach * reach) return 0.0;
    const double mean_cdf = poisson_cdf(lambda * shape.scaled_beta(), k);
    KahanSum sum;
    for (int m = 0; m < k; ++m)
        for (int n = 0; n < k; ++n) sum.add(pair_cover_probability(lambda, shape, m, n, y));
    return sum.value() - mean_cdf * mean_cdf;
}

inline double covariance_vk_points(const PBParams& p, const Point& y) {
    p.validate();
    return covariance_vk_points(p.lambda, p.shape, p.k, y);
}

namespace detail {

// Radial weight for int f(|y|) |R ∩ (R-y)| dy: the angular integral of
// prod_i (L_i - s|u_i|)_+ times the surface Jacobian s^{d-1}. Closed forms
// valid while s <= min_i L_i.
inline double box_radial_weight(int d, double s, const Region& R) {
    const double L1 = R.side(0);
    switch (d) {
        case 1: return 2.0 * (L1 - s);
        case 2: {
            const double L2 = R.side(1);
            return s * (2.0 * std::numbers::pi * L1 * L2 - 4.0 * s * (L1 + L2) + 2.0 * s * s);
        }
        case 3: {
            const double L2 = R.side(1), L3 = R.side(2);
            return s * s *
                   (4.0 * std::numbers::pi * L1 * L2 * L3 -
                    2.0 * std::numbers::pi * s * (L1 * L2 + L2 * L3 + L1 * L3) +
                    (8.0 / 3.0) * s * s * (L1 + L2 + L3) - s * s * s);
        }
    }
    throw std::invalid_argument("box_radial_weight: dims");
}

inline void require_converged(const QuadResult& q, const char* who) {
    if (!q.converged) throw QuadratureError(std::string(who) + ": quadrature did not converge", q);
}

}  // namespace detail

/// Var(V_k) = int_{RxR} Cov dx1 dx2, reduced to the difference variable with
/// the region-overlap weight |R ∩ (R - y)|. Discs use the radial closed
/// form of the angular weight; squares a tensor quadrature.
inline QuadResult variance_vk(const PBParams& p, const QuadratureConfig& cfg = {}) {
    p.validate();
    QuadResult out;
    if (p.lambda == 0.0) return out;
    const int d = p.shape.dims;
    const double a = 2.0 * p.shape.reach();
    double min_side = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) min_side = std::min(min_side, p.region.side(i));

    if (p.shape.kind == ShapeSpec::Kind::Disc && (d == 1 || a <= min_side)) {
        auto f = [&](double s) {
            Point y{s, 0.0, 0.0};
            return covariance_vk_points(p, y) * detail::box_radial_weight(d, s, p.region);
        };
        out = integrate(f, 0.0, std::min(a, min_side), cfg);
        detail::require_converged(out, "variance_vk");
        return out;
    }
    if (d == 1) {  // any 1-d shape is radial
        auto f = [&](double s) {
            Point y{s, 0.0, 0.0};
            return covariance_vk_points(p, y) * (p.region.side(0) - s);
        };
        out = integrate(f, 0.0, std::min(a, min_side), cfg);
        out.value *= 2.0;
        out.error *= 2.0;
        detail::require_converged(out, "variance_vk");
        return out;
    }
    if (d == 2) {  // tensor quadrature over one quadrant of the difference box
        QuadratureConfig inner_cfg = cfg;
        inner_cfg.abs_tol = 0.1 * cfg.abs_tol;
        inner_cfg.rel_tol = 0.1 * cfg.rel_tol;
        const double ax = std::min(a, p.region.side(0));
        const double ay = std::min(a, p.region.side(1));
        double inner_err = 0.0;
        bool inner_ok = true;
        auto outer_f = [&](double y1) {
            auto inner_f = [&](double y2) {
                Point y{y1, y2, 0.0};
                return covariance_vk_points(p, y) * (p.region.side(0) - y1) *
                       (p.region.side(1) - y2);
            };
            QuadResult q = integrate(inner_f, 0.0, ay, inner_cfg);
            inner_err = std::max(inner_err, q.error);
            inner_ok = inner_ok && q.converged;
            return q.value;
        };
        out = integrate(outer_f, 0.0, ax, cfg);
        out.value *= 4.0;
        out.error = 4.0 * (out.error + inner_err * ax);
        out.converged = out.converged && inner_ok;
        detail::require_converged(out, "variance_vk");
        return out;
    }
    throw std::invalid_argument("variance_vk: unsupported shape/dimension combination");
}

/// sigma^2 of Theorem WL: rho |R| e^{-2 rho beta} * int_{B_{0,2tau}} [...] dy,
/// with the B2 exponent m+n-2l (consistent with the covariance from which
/// the display is derived; the paper's sigma^2 display prints m+n-l once).
inline QuadResult sigma2_limit(double rho, const ShapeSpec& shape, int k,
                               const QuadratureConfig& cfg = {}, double volume = 1.0) {
    if (!(rho >= 0.0)) throw std::invalid_argument("sigma2_limit: rho < 0");
    if (k < 1) throw std::invalid_argument("sigma2_limit: k >= 1 required");
    QuadResult out;
    if (rho == 0.0) return out;
    const ShapeSpec base = shape.scaled(1.0);
    const int d = base.dims;
    const double a = 2.0 * base.tau;

    if (base.kind == ShapeSpec::Kind::Disc || d == 1) {
        auto f = [&](double s) {
            Point y{s, 0.0, 0.0};
            const double cov = covariance_vk_points(rho, base, k, y);
            switch (d) {
                case 1: return 2.0 * cov;
                case 2: return 2.0 * std::numbers::pi * s * cov;
                default: return 4.0 * std::numbers::pi * s * s * cov;
            }
        };
        out = integrate(f, 0.0, a, cfg);
    } else if (d == 2) {
        QuadratureConfig inner_cfg = cfg;
        inner_cfg.abs_tol = 0.1 * cfg.abs_tol;
        inner_cfg.rel_tol = 0.1 * cfg.rel_tol;
        double inner_err = 0.0;
        bool inner_ok = true;
        auto outer_f = [&](double y1) {
            auto inner_f = [&](double y2) {
                Point y{y1, y2, 0.0};
                return covariance_vk_points(rho, base, k, y);
            };
            QuadResult q = integrate(inner_f, 0.0, a, inner_cfg);
            inner_err = std::max(inner_err, q.error);
            inner_ok = inner_ok && q.converged;
            return q.value;
        };
        out = integrate(outer_f, 0.0, a, cfg);
        out.value *= 4.0;
        out.error = 4.0 * (out.error + inner_err * a);
        out.converged = out.converged && inner_ok;
    } else {
        throw std::invalid_argument("sigma2_limit: unsupported shape/dimension combination");
    }
    detail::require_converged(out, "sigma2_limit");
    out.value *= rho * volume;
    out.error *= rho * volume;
    return out;
}

// ---------------------------------------------------------------------------
// Complete-coverage bounds and critical radii (d = 2, unit square, discs).
// ---------------------------------------------------------------------------

struct CoverageBounds {
    double lower = 0.0;      // 1 / (1 + theta)
    double upper_raw = 0.0;  // may exceed 1; clamp only when reporting
    double theta = 0.0;
};

inline CoverageBounds coverage_bounds(double lambda, double r, int k) {
    if (k < 1) throw std::invalid_argument("coverage_bounds: k >= 1 required");
    if (!(lambda > 0.0) || !(r > 0.0))
        throw std::invalid_argument("coverage_bounds: lambda, r must be > 0");
    if (std::numbers::pi * r * r > 1.0)
        throw std::invalid_argument("coverage_bounds: pi r^2 must be <= 1");
    const double u = lambda * std::numbers::pi * r * r;
    CoverageBounds b;
    b.theta = 4.0 * std::exp(std::lgamma(k + 2.0)) / (std::exp(-u) * lambda * std::pow(u, k));
    b.lower = 1.0 / (1.0 + b.theta);
    KahanSum s;
    for (int i = 0; i < k; ++i) s.add(std::exp(i * std::log(u) - std::lgamma(i + 1.0)));
    const double tail = lambda * u * (1.0 + 2.0 / (lambda * std::numbers::pi * r)) * s.value();
    b.upper_raw = 2.0 * std::exp(-u) * (1.0 + tail);
    return b;
}

/// r_n^2 of Theorem full_cov: (log n + k log log n + c_n) / (pi n).
inline double critical_radius_sq(double n, int k, double c_n) {
    if (!(n > std::numbers::e)) throw std::invalid_argument("critical_radius_sq: need n > e");
    if (k < 0) throw std::invalid_argument("critical_radius_sq: k >= 0 required");
    return (std::log(n) + k * std::log(std::log(n)) + c_n) / (std::numbers::pi * n);
}

inline double sup_critical_radius_sq(double n, int k, double eps) {
    return (1.0 + eps) * critical_radius_sq(n, k, 0.0);
}
inline double sub_critical_radius_sq(double n, int k, double eps) {
    return (1.0 - eps) * critical_radius_sq(n, k, 0.0);
}

// ---------------------------------------------------------------------------
// Markov on/off sensors and path coverage.
// ---------------------------------------------------------------------------

/// p_t(j,j) = (1-p_j) e^{-gamma t} + p_j; rows sum to 1.
inline double onoff_transition(int j, int jj, double t, const OnOffParams& oo) {
    if (j < 0 || j > 1 || jj < 0 || jj > 1)
        throw std::invalid_argument("onoff_transition: states are 0/1");
    if (!(t >= 0.0)) throw std::invalid_argument("onoff_transition: t < 0");
    const double pj = (j == 1) ? oo.p1 : oo.p0;
    const double same = (1.0 - pj) * std::exp(-oo.gamma * t) + pj;
    return (j == jj) ? same : 1.0 - same;
}

inline double onoff_transition(int j, int jj, double t, double mu0, double mu1) {
    return onoff_transition(j, jj, t, OnOffParams::from_rates(mu0, mu1));
}

/// E[V_T] = T e^{-lambda p1 beta_delta}.
inline double expected_vt(double T, double lambda, double p1, double beta_delta) {
    if (!(T >= 0.0)) throw std::invalid_argument("expected_vt: T < 0");
    return T * std::exp(-lambda * p1 * beta_delta);
}

namespace detail {

// The variance integrands share exponent lambda E|B1(cs)| p1 (p1 + p0 e^{-g s});
// g = infinity means the e^{-g s} factor is identically 0 for s > 0 and the
// s = 0 value uses the continuous extension.
inline double onoff_mix(double p1, double gamma, double s) {
    const double p0 = 1.0 - p1;
    if (std::isinf(gamma)) return p1;
    return p1 + p0 * std::exp(-gamma * s);
}

}  // namespace detail

/// Var(V_T) for the MPB model at scale shape.delta, reduced to a single
/// integral in s = s2 - s1 with weight (T - s); the integrand vanishes for
/// c s >= 2 tau delta.
inline QuadResult variance_vt(double T, double lambda, const ShapeSpec& shape, double c, double p1,
                              double gamma, const QuadratureConfig& cfg = {}) {
    if (!(T >= 0.0)) throw std::invalid_argument("variance_vt: T < 0");
    if (!(c > 0.0)) throw std::invalid_argument("variance_vt: speed must be > 0");
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw std::invalid_argument("variance_vt: p1 in [0,1]");
    if (!(gamma >= 0.0)) throw std::invalid_argument("variance_vt: gamma < 0");
    QuadResult out;
    if (lambda == 0.0 || T == 0.0) return out;
    const double smax = std::min(T, 2.0 * shape.reach() / c);
    auto f = [&](double s) {
        const double b1 = pair_intersection_mean(shape, c * s);
        const double expo = lambda * b1 * p1 * detail::onoff_mix(p1, gamma, s);
        return (T - s) * std::expm1(expo);
    };
    out = integrate(f, 0.0, smax, cfg);
    detail::require_converged(out, "variance_vt");
    const double pref = 2.0 * std::exp(-2.0 * p1 * lambda * shape.scaled_beta());
    out.value *= pref;
    out.error *= pref;
    return out;
}

inline QuadResult variance_vt(double T, double lambda, const ShapeSpec& shape, double c,
                              const OnOffParams& oo, const QuadratureConfig& cfg = {}) {
    return variance_vt(T, lambda, shape, c, oo.p1, oo.gamma, cfg);
}

/// sigma_1^2(a0) of the path-variance scaling law; a0 = infinity is a
/// first-class input. Shape is taken unscaled.
inline QuadResult sigma1_sq(double a0, double T, double rho, const ShapeSpec& shape, double c,
                            double p1, const QuadratureConfig& cfg = {}) {
    if (!(a0 >= 0.0)) throw std::invalid_argument("sigma1_sq: a0 < 0");
    if (!(rho >= 0.0)) throw std::invalid_argument("sigma1_sq: rho < 0");
    if (!(c > 0.0)) throw std::invalid_argument("sigma1_sq: speed must be > 0");
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw std::invalid_argument("sigma1_sq: p1 in [0,1]");
    QuadResult out;
    if (rho == 0.0 || T == 0.0) return out;
    const ShapeSpec base = shape.scaled(1.0);
    auto f = [&](double s) {
        const double b1 = pair_intersection_mean(base, c * s);
        return std::expm1(p1 * rho * b1 * detail::onoff_mix(p1, a0, s));
    };
    out = integrate(f, 0.0, 2.0 * base.tau / c, cfg);
    detail::require_converged(out, "sigma1_sq");
    const double pref = 2.0 * T * std::exp(-2.0 * p1 * rho * base.beta);
    out.value *= pref;
    out.error *= pref;
    return out;
}

/// sigma_2^2 of the long-horizon CLT; equals sigma1_sq with T = 1,
/// rho -> lambda, a0 -> mu0 + mu1.
inline QuadResult sigma2_sq(double lambda, const ShapeSpec& shape, double c, double mu0,
                            double mu1, const QuadratureConfig& cfg = {}) {
    const OnOffParams oo = OnOffParams::from_rates(mu0, mu1);
    return sigma1_sq(oo.gamma, 1.0, lambda, shape, c, oo.p1, cfg);
}

}  // namespace analytic
}  // namespace mpb
