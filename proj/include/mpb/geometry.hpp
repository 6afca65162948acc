#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mpb/rng.hpp"

namespace mpb {

/// Point in up to 3 dimensions; unused coordinates stay 0.
using Point = std::array<double, 3>;

enum class BoundaryMode { Dilated, Hard, Torus };

inline const char* to_string(BoundaryMode m) {
    switch (m) {
        case BoundaryMode::Dilated: return "dilated";
        case BoundaryMode::Hard: return "hard";
        case BoundaryMode::Torus: return "torus";
    }
    return "?";
}

/// Axis-aligned box in d in {1,2,3}. The unit cube is box({0..1}^d).
struct Region {
    int dims = 2;
    std::array<double, 3> lo{0.0, 0.0, 0.0};
    std::array<double, 3> hi{1.0, 1.0, 1.0};

    static Region unit_cube(int d) {
        Region r;
        r.dims = d;
        r.validate();
        return r;
    }
    static Region box(int d, std::array<double, 3> lo, std::array<double, 3> hi) {
        Region r;
        r.dims = d;
        r.lo = lo;
        r.hi = hi;
        r.validate();
        return r;
    }

    void validate() const {
        if (dims < 1 || dims > 3) throw std::invalid_argument("Region: dims must be 1, 2 or 3");
        for (int i = 0; i < dims; ++i)
            if (!(hi[i] > lo[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i]))
                throw std::invalid_argument("Region: degenerate or non-finite bounds");
    }

    double side(int axis) const { return hi[axis] - lo[axis]; }
    double volume() const {
        double v = 1.0;
        for (int i = 0; i < dims; ++i) v *= side(i);
        return v;
    }
    Region dilated(double reach) const {
        Region r = *this;
        for (int i = 0; i < dims; ++i) {
            r.lo[i] -= reach;
            r.hi[i] += reach;
        }
        return r;
    }
    bool contains(const Point& p, double tol = 0.0) const {
        for (int i = 0; i < dims; ++i)
            if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
        return true;
    }
};

/// Membership oracle for a generic shape, queried at unscaled (delta = 1)
/// offsets from the shape center.
using ShapeOracle = std::function<bool(const Point&)>;

/// Sensing shape C with circumradius bound tau, mean volume beta and scale
/// delta. Disc and square have closed forms; generic shapes carry an oracle
/// and user-supplied tau/beta.
struct ShapeSpec {
    enum class Kind { Disc, Square, Generic };

    Kind kind = Kind::Disc;
    int dims = 2;
    double size = 1.0;   // disc radius or square side, unscaled
    double tau = 1.0;    // circumradius bound of unscaled C
    double beta = 0.0;   // E|C|, unscaled
    double delta = 1.0;  // scale applied to C
    ShapeOracle oracle;  // generic only

    static double ball_volume(int d, double r) {
        switch (d) {
            case 1: return 2.0 * r;
            case 2: return std::numbers::pi * r * r;
            case 3: return 4.0 / 3.0 * std::numbers::pi * r * r * r;
        }
        throw std::invalid_argument("ball_volume: dims must be 1, 2 or 3");
    }

    static ShapeSpec disc(int d, double radius, double scale = 1.0) {
        if (!(radius > 0.0)) throw std::invalid_argument("disc: radius must be > 0");
        ShapeSpec s;
        s.kind = Kind::Disc;
        s.dims = d;
        s.size = radius;
        s.tau = radius;
        s.beta = ball_volume(d, radius);
        s.delta = scale;
        s.check();
        return s;
    }
    static ShapeSpec square(int d, double side, double scale = 1.0) {
        if (!(side > 0.0)) throw std::invalid_argument("square: side must be > 0");
        ShapeSpec s;
        s.kind = Kind::Square;
        s.dims = d;
        s.size = side;
        s.tau = 0.5 * side * std::sqrt(static_cast<double>(d));
        s.beta = std::pow(side, d);
        s.delta = scale;
        s.check();
        return s;
    }
    static ShapeSpec generic(int d, ShapeOracle oracle, double tau, double beta,
                             double scale = 1.0) {
        ShapeSpec s;
        s.kind = Kind::Generic;
        s.dims = d;
        s.tau = tau;
        s.beta = beta;
        s.delta = scale;
        s.oracle = std::move(oracle);
        s.check();
        return s;
    }

    void check() const {
        if (dims < 1 || dims > 3) throw std::invalid_argument("ShapeSpec: dims must be 1, 2 or 3");
        if (!(tau > 0.0) || !(beta > 0.0) || !(delta > 0.0))
            throw std::invalid_argument("ShapeSpec: tau, beta, delta must be > 0");
    }

    ShapeSpec scaled(double new_delta) const {
        ShapeSpec s = *this;
        s.delta = new_delta;
        s.check();
        return s;
    }

    /// Circumradius of the scaled shape; sensors farther than this from a
    /// point cannot cover it.
    double reach() const { return tau * delta; }
    /// E|delta C| = delta^d beta.
    double scaled_beta() const { return std::pow(delta, dims) * beta; }
};

/// One realization of the center process.
struct PointSample {
    std::vector<Point> points;
    double intensity = 0.0;
    Region sampled_region;       // where centers were drawn
    Region target_region;        // the operational region R
    BoundaryMode mode = BoundaryMode::Dilated;
};

/// Stationary Poisson process restricted to the sampling window. In dilated
/// mode the window is R grown per axis by `reach` so every sensor that can
/// touch R is present (coverage inside R is exactly stationary); hard and
/// torus draw centers in R itself.
inline PointSample sample_ppp(double intensity, const Region& region, BoundaryMode mode,
                              double reach, Rng& rng) {
    if (!std::isfinite(intensity) || intensity < 0.0)
        throw std::invalid_argument("sample_ppp: intensity must be finite and >= 0");
    region.validate();
    PointSample out;
    out.intensity = intensity;
    out.target_region = region;
    out.mode = mode;
    out.sampled_region = (mode == BoundaryMode::Dilated) ? region.dilated(reach) : region;
    const std::uint64_t n = rng.poisson(intensity * out.sampled_region.volume());
    out.points.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        Point p{0.0, 0.0, 0.0};
        for (int ax = 0; ax < region.dims; ++ax)
            p[ax] = rng.uniform(out.sampled_region.lo[ax], out.sampled_region.hi[ax]);
        out.points[i] = p;
    }
    return out;
}

inline double dist_sq(const Point& a, const Point& b, int dims) {
    double s = 0.0;
    for (int i = 0; i < dims; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

/// Closed-set membership of x in center + delta*C. Boundary counts as
/// covered.
inline bool covers(const Point& x, const Point& center, const ShapeSpec& shape) {
    switch (shape.kind) {
        case ShapeSpec::Kind::Disc: {
            const double r = shape.size * shape.delta;
            return dist_sq(x, center, shape.dims) <= r * r;
        }
        case ShapeSpec::Kind::Square: {
            const double half = 0.5 * shape.size * shape.delta;
            for (int i = 0; i < shape.dims; ++i)
                if (std::fabs(x[i] - center[i]) > half) return false;
            return true;
        }
        case ShapeSpec::Kind::Generic: {
            if (!shape.oracle) throw std::invalid_argument("covers: generic shape without oracle");
            Point rel{0.0, 0.0, 0.0};
            for (int i = 0; i < shape.dims; ++i) rel[i] = (x[i] - center[i]) / shape.delta;
            return shape.oracle(rel);
        }
    }
    return false;
}

/// Torus variant: membership under periodic wrap of the region.
inline bool covers_torus(const Point& x, const Point& center, const ShapeSpec& shape,
                         const Region& region) {
    Point c = center;
    for (int i = 0; i < region.dims; ++i) {
        const double L = region.side(i);
        double d = c[i] - x[i];
        d -= L * std::round(d / L);
        c[i] = x[i] + d;
    }
    return covers(x, c, shape);
}

namespace detail {

// Overlap volume of two d-balls of radius r at center distance u.
inline double ball_overlap(int d, double r, double u) {
    if (u >= 2.0 * r) return 0.0;
    if (u <= 0.0) return ShapeSpec::ball_volume(d, r);
    switch (d) {
        case 1: return 2.0 * r - u;
        case 2: {
            const double lens =
                2.0 * r * r * std::acos(u / (2.0 * r)) - 0.5 * u * std::sqrt(4.0 * r * r - u * u);
            return std::max(0.0, lens);
        }
        case 3: {
            const double h = r - 0.5 * u;  // cap height; two equal caps
            return std::max(0.0, 2.0 * std::numbers::pi * h * h * (3.0 * r - h) / 3.0);
        }
    }
    throw std::invalid_argument("ball_overlap: dims must be 1, 2 or 3");
}

}  // namespace detail

/// E|B1(y)| = E|(y + C) ∩ C| for the scaled shape. Symmetric in y <-> -y,
/// zero for |y| >= 2 tau delta, beta_delta at y = 0.
inline double pair_intersection_mean(const ShapeSpec& shape, const Point& y) {
    switch (shape.kind) {
        case ShapeSpec::Kind::Disc: {
            const double u = std::sqrt(dist_sq(y, Point{0.0, 0.0, 0.0}, shape.dims));
            return detail::ball_overlap(shape.dims, shape.size * shape.delta, u);
        }
        case ShapeSpec::Kind::Square: {
            const double a = shape.size * shape.delta;
            double v = 1.0;
            for (int i = 0; i < shape.dims; ++i) {
                const double w = a - std::fabs(y[i]);
                if (w <= 0.0) return 0.0;
                v *= w;
            }
            return v;
        }
        case ShapeSpec::Kind::Generic:
            throw std::invalid_argument(
                "pair_intersection_mean: generic shape needs the Monte-Carlo estimator");
    }
    return 0.0;
}

/// Radial convenience for spherically symmetric shapes.
inline double pair_intersection_mean(const ShapeSpec& shape, double separation) {
    Point y{separation, 0.0, 0.0};
    return pair_intersection_mean(shape, y);
}

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Monte-Carlo |(y + delta C) ∩ delta C| for generic shapes (and as an
/// independent oracle for the closed forms): hit-sampling over the
/// circumscribed ball of the scaled shape.
inline McEstimate pair_intersection_mean_mc(const ShapeSpec& shape, const Point& y,
                                            std::size_t samples, Rng& rng) {
    if (samples == 0) throw std::invalid_argument("pair_intersection_mean_mc: samples == 0");
    const double rad = shape.reach();
    const int d = shape.dims;
    const double box_vol = std::pow(2.0 * rad, d);
    ShapeSpec unit = shape;  // membership via covers() centered at origin
    const Point origin{0.0, 0.0, 0.0};
    std::size_t hits = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        Point x{0.0, 0.0, 0.0};
        for (int ax = 0; ax < d; ++ax) x[ax] = rng.uniform(-rad, rad);
        Point shifted{0.0, 0.0, 0.0};
        for (int ax = 0; ax < d; ++ax) shifted[ax] = x[ax] - y[ax];
        if (covers(x, origin, unit) && covers(shifted, origin, unit)) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    McEstimate e;
    e.value = p * box_vol;
    e.std_error = box_vol * std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(samples)));
    e.samples = samples;
    return e;
}

/// E|B2(y)| = beta_delta - E|B1(y)| (identity E|B1| + E|B2| = beta).
inline double complement_intersection_mean(const ShapeSpec& shape, const Point& y) {
    return std::max(0.0, shape.scaled_beta() - pair_intersection_mean(shape, y));
}

inline double complement_intersection_mean(const ShapeSpec& shape, double separation) {
    Point y{separation, 0.0, 0.0};
    return complement_intersection_mean(shape, y);
}

// ---------------------------------------------------------------------------
// Uniform spatial hash over 2-d points (crossing and depth queries).
// ---------------------------------------------------------------------------

class SpatialHash2D {
public:
    SpatialHash2D(const std::vector<Point>& pts, double cell_size, double lo_x, double lo_y,
                  double hi_x, double hi_y)
        : pts_(pts), cell_(std::max(cell_size, 1e-12)), lo_x_(lo_x), lo_y_(lo_y) {
        nx_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((hi_x - lo_x) / cell_)));
        ny_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((hi_y - lo_y) / cell_)));
        counts_.assign(static_cast<std::size_t>(nx_ * ny_) + 1, 0);
        for (const auto& p : pts) ++counts_[flat(cell_x(p[0]), cell_y(p[1])) + 1];
        for (std::size_t i = 1; i < counts_.size(); ++i) counts_[i] += counts_[i - 1];
        order_.resize(pts.size());
        std::vector<std::uint32_t> cursor(counts_.begin(), counts_.end() - 1);
        for (std::uint32_t i = 0; i < pts.size(); ++i) {
            const std::size_t c = flat(cell_x(pts[i][0]), cell_y(pts[i][1]));
            order_[cursor[c]++] = i;
        }
    }

    /// Visit indices of points within `radius` of q (candidates include the
    /// whole 3x3-or-wider cell neighborhood; the callback gets exact dist^2).
    /// Visitor returns false to stop early.
    template <typename Visit>
    void for_each_within(const Point& q, double radius, Visit&& visit) const {
        const std::int64_t cx0 = cell_x(q[0] - radius), cx1 = cell_x(q[0] + radius);
        const std::int64_t cy0 = cell_y(q[1] - radius), cy1 = cell_y(q[1] + radius);
        const double r2 = radius * radius;
        for (std::int64_t cy = cy0; cy <= cy1; ++cy)
            for (std::int64_t cx = cx0; cx <= cx1; ++cx) {
                const std::size_t c = flat(cx, cy);
                for (std::uint32_t k = counts_[c]; k < counts_[c + 1]; ++k) {
                    const std::uint32_t i = order_[k];
                    const double dx = pts_[i][0] - q[0];
                    const double dy = pts_[i][1] - q[1];
                    const double d2 = dx * dx + dy * dy;
                    if (d2 <= r2)
                        if (!visit(i, d2)) return;
                }
            }
    }

    std::int64_t nx() const { return nx_; }
    std::int64_t ny() const { return ny_; }
    std::int64_t cell_x(double x) const {
        return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((x - lo_x_) / cell_)),
                                        0, nx_ - 1);
    }
    std::int64_t cell_y(double y) const {
        return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((y - lo_y_) / cell_)),
                                        0, ny_ - 1);
    }
    std::size_t flat(std::int64_t cx, std::int64_t cy) const {
        return static_cast<std::size_t>(cy * nx_ + cx);
    }
    const std::vector<std::uint32_t>& cell_slice(std::size_t c, std::uint32_t& b,
                                                 std::uint32_t& e) const {
        b = counts_[c];
        e = counts_[c + 1];
        return order_;
    }

private:
    const std::vector<Point>& pts_;
    double cell_;
    double lo_x_, lo_y_;
    std::int64_t nx_ = 1, ny_ = 1;
    std::vector<std::uint32_t> counts_;
    std::vector<std::uint32_t> order_;
};

// ---------------------------------------------------------------------------
// Crossings of a 2-d equal-radius disc arrangement within a closed region.
// ---------------------------------------------------------------------------

enum class CrossingKind { DiscDisc, DiscBoundary };

struct Crossing {
    Point p{0.0, 0.0, 0.0};
    CrossingKind kind = CrossingKind::DiscDisc;
};

/// Streams every circle-circle intersection point (two per properly
/// crossing pair, one at tangency) plus circle/region-boundary intersection
/// points, each inside the closed region. The visitor returns false to stop
/// early; the enumeration is expected O(n + #crossings) via the spatial
/// hash and never materializes the crossing set.
/// Returns true when the visitor never stopped the scan.
template <typename Visit>
bool for_each_crossing(const std::vector<Point>& centers, double radius, const Region& region,
                       Visit&& visit) {
    if (region.dims != 2) throw std::invalid_argument("for_each_crossing: dims must be 2");
    if (centers.empty() || !(radius > 0.0)) return true;
    const double tol = 1e-12;

    double lo_x = region.lo[0], lo_y = region.lo[1], hi_x = region.hi[0], hi_y = region.hi[1];
    for (const auto& c : centers) {
        lo_x = std::min(lo_x, c[0]);
        lo_y = std::min(lo_y, c[1]);
        hi_x = std::max(hi_x, c[0]);
        hi_y = std::max(hi_y, c[1]);
    }
    SpatialHash2D hash(centers, 2.0 * radius, lo_x, lo_y, hi_x, hi_y);

    bool keep_going = true;

    // circle-circle: each unordered pair once
    for (std::uint32_t i = 0; i < centers.size() && keep_going; ++i) {
        const Point& a = centers[i];
        hash.for_each_within(a, 2.0 * radius, [&](std::uint32_t j, double d2) {
            if (j <= i || d2 <= 0.0) return true;
            const Point& b = centers[j];
            const double s = radius * radius - 0.25 * d2;  // squared half-chord
            if (s < 0.0) return true;
            const double inv_d = 1.0 / std::sqrt(d2);
            const double mx = 0.5 * (a[0] + b[0]);
            const double my = 0.5 * (a[1] + b[1]);
            const double ux = (b[0] - a[0]) * inv_d;
            const double uy = (b[1] - a[1]) * inv_d;
            const double h = std::sqrt(s);
            const int npts = (h > 0.0) ? 2 : 1;  // tangency yields one point
            for (int sgn = 0; sgn < npts; ++sgn) {
                const double f = (sgn == 0) ? h : -h;
                Point p{mx - uy * f, my + ux * f, 0.0};
                if (region.contains(p, tol) && !visit(Crossing{p, CrossingKind::DiscDisc})) {
                    keep_going = false;
                    return false;
                }
            }
            return true;
        });
    }
    if (!keep_going) return false;

    // circle-boundary: each of the 4 edges of the box
    auto edge_hits = [&](int fixed_axis, double fixed_val, double span_lo, double span_hi,
                         const Point& c) {
        const int free_axis = 1 - fixed_axis;
        const double d = fixed_val - c[fixed_axis];
        const double s = radius * radius - d * d;
        if (s < 0.0) return true;
        const double h = std::sqrt(s);
        const int npts = (h > 0.0) ? 2 : 1;
        for (int sgn = 0; sgn < npts; ++sgn) {
            const double v = c[free_axis] + ((sgn == 0) ? h : -h);
            if (v < span_lo - tol || v > span_hi + tol) continue;
            Point p{0.0, 0.0, 0.0};
            p[fixed_axis] = fixed_val;
            p[free_axis] = v;
            if (!visit(Crossing{p, CrossingKind::DiscBoundary})) return false;
        }
        return true;
    };
    for (const auto& c : centers) {
        // skip circles that cannot reach the boundary frame
        const bool near_x = std::fabs(c[0] - region.lo[0]) <= radius ||
                            std::fabs(c[0] - region.hi[0]) <= radius;
        const bool near_y = std::fabs(c[1] - region.lo[1]) <= radius ||
                            std::fabs(c[1] - region.hi[1]) <= radius;
        if (!near_x && !near_y) continue;
        if (!edge_hits(0, region.lo[0], region.lo[1], region.hi[1], c)) return false;
        if (!edge_hits(0, region.hi[0], region.lo[1], region.hi[1], c)) return false;
        if (!edge_hits(1, region.lo[1], region.lo[0], region.hi[0], c)) return false;
        if (!edge_hits(1, region.hi[1], region.lo[0], region.hi[0], c)) return false;
    }
    return true;
}

/// Materialized crossing list (small fields / tests).
inline std::vector<Crossing> circle_crossings(const std::vector<Point>& centers, double radius,
                                              const Region& region) {
    std::vector<Crossing> out;
    for_each_crossing(centers, radius, region, [&](const Crossing& x) {
        out.push_back(x);
        return true;
    });
    return out;
}

}  // namespace mpb
