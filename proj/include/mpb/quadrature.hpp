#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace mpb {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 40;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // accumulated local error estimates (|S2-S1|/15)
    bool converged = true;
    std::size_t evals = 0;
};

/// Thrown by callers that cannot proceed on a non-converged panel; carries
/// the partial estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadResult partial)
        : std::runtime_error(what), partial_(partial) {}
    const QuadResult& partial() const { return partial_; }

private:
    QuadResult partial_;
};

namespace detail {

template <typename F>
void adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                          double whole, double abs_tol, double rel_tol, int depth,
                          int max_depth, QuadResult& out) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    out.evals += 2;
    const double h = b - a;
    const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
    const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
    const double s2 = left + right;
    const double err = (s2 - whole) / 15.0;
    const double tol = std::max(abs_tol, rel_tol * std::fabs(s2));
    if (std::fabs(err) <= tol || depth >= max_depth) {
        out.value += s2 + err;  // Richardson correction
        out.error += std::fabs(err);
        if (depth >= max_depth && std::fabs(err) > tol) out.converged = false;
        return;
    }
    adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * abs_tol, rel_tol, depth + 1,
                         max_depth, out);
    adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * abs_tol, rel_tol, depth + 1,
                         max_depth, out);
}

}  // namespace detail

/// Adaptive Simpson on [a,b]. The integrand must be finite on [a,b].
template <typename F>
QuadResult integrate(const F& f, double a, double b, const QuadratureConfig& cfg = {}) {
    QuadResult out;
    if (!(b > a)) return out;  // empty or degenerate range integrates to 0
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    out.evals = 3;
    const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, cfg.abs_tol, cfg.rel_tol, 0,
                                 cfg.max_depth, out);
    return out;
}

}  // namespace mpb
