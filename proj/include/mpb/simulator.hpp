#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mpb/analytic.hpp"
#include "mpb/dynamics.hpp"
#include "mpb/geometry.hpp"
#include "mpb/intervals.hpp"
#include "mpb/rng.hpp"

namespace mpb {

/// One realization of the (M)PB model.
struct SensorField {
    PointSample sample;
    ShapeSpec shape = ShapeSpec::disc(2, 1.0);
    int k = 1;
    Region region = Region::unit_cube(2);
};

/// Deterministic field from (seed, replication_index) via Rng::substream.
inline SensorField realize_field(const PBParams& params, BoundaryMode mode, std::uint64_t seed,
                                 std::uint64_t replication_index) {
    params.validate();
    Rng rng = Rng::substream(seed, replication_index);
    SensorField f;
    f.sample = sample_ppp(params.lambda, params.region, mode, params.shape.reach(), rng);
    f.shape = params.shape;
    f.k = params.k;
    f.region = params.region;
    return f;
}

/// Variant that consumes an already-derived stream (MPB pipelines keep
/// sampling trajectories from the same stream afterwards).
inline SensorField realize_field(const PBParams& params, BoundaryMode mode, Rng& rng) {
    params.validate();
    SensorField f;
    f.sample = sample_ppp(params.lambda, params.region, mode, params.shape.reach(), rng);
    f.shape = params.shape;
    f.k = params.k;
    f.region = params.region;
    return f;
}

struct VacancyMeasurement {
    enum class Method { Grid, Exact1D, ExactBoolean };
    double value = 0.0;
    Method method = Method::Grid;
    int resolution = 0;
    double error_bound = 0.0;
};

// ---------------------------------------------------------------------------
// Grid vacancy: midpoint rule with a rigorous boundary-cell error bound.
// ---------------------------------------------------------------------------

namespace grid_detail {

struct DepthGrid {
    int dims;
    int res;
    std::array<double, 3> lo;
    std::array<double, 3> h;
    std::vector<std::uint16_t> depth;
    std::vector<std::uint8_t> dirty;  // cell box is cut by some shape boundary

    DepthGrid(const Region& region, int resolution) : dims(region.dims), res(resolution) {
        if (resolution < 2) throw std::invalid_argument("vacancy_grid: resolution >= 2");
        double cells = 1.0;
        for (int i = 0; i < dims; ++i) cells *= resolution;
        if (cells > 4294967296.0) throw std::invalid_argument("vacancy_grid: resolution^d > 2^32");
        lo = region.lo;
        for (int i = 0; i < 3; ++i) h[i] = (i < dims) ? region.side(i) / res : 1.0;
        depth.assign(static_cast<std::size_t>(cells), 0);
        dirty.assign(static_cast<std::size_t>(cells), 0);
    }

    double mid(int axis, std::int64_t idx) const { return lo[axis] + (idx + 0.5) * h[axis]; }

    std::size_t flat(std::int64_t ix, std::int64_t iy, std::int64_t iz) const {
        return static_cast<std::size_t>((iz * res + iy) * res + ix);
    }

    void bump(std::size_t cell) {
        if (depth[cell] != std::numeric_limits<std::uint16_t>::max()) ++depth[cell];
    }

    // Midpoint columns of row (iy,iz) with (x-cx)^2 <= s2, verified exactly
    // at the edges.
    void stamp_row(std::int64_t iy, std::int64_t iz, double cx, double s2) {
        const double half = std::sqrt(s2);
        auto ix0 = static_cast<std::int64_t>(std::floor((cx - half - lo[0]) / h[0] - 0.5)) - 1;
        auto ix1 = static_cast<std::int64_t>(std::ceil((cx + half - lo[0]) / h[0] - 0.5)) + 1;
        ix0 = std::max<std::int64_t>(ix0, 0);
        ix1 = std::min<std::int64_t>(ix1, res - 1);
        auto inside = [&](std::int64_t ix) {
            const double dx = mid(0, ix) - cx;
            return dx * dx <= s2;
        };
        while (ix0 <= ix1 && !inside(ix0)) ++ix0;
        while (ix1 >= ix0 && !inside(ix1)) --ix1;
        for (std::int64_t ix = ix0; ix <= ix1; ++ix) bump(flat(ix, iy, iz));
    }

    void stamp_ball(const Point& c, double rr) {
        const double rr2 = rr * rr;
        if (dims == 1) {
            stamp_row(0, 0, c[0], rr2);
            return;
        }
        auto row_range = [&](int axis, double cc) {
            auto a = static_cast<std::int64_t>(std::floor((cc - rr - lo[axis]) / h[axis] - 0.5)) - 1;
            auto b = static_cast<std::int64_t>(std::ceil((cc + rr - lo[axis]) / h[axis] - 0.5)) + 1;
            return std::pair<std::int64_t, std::int64_t>{std::max<std::int64_t>(a, 0),
                                                         std::min<std::int64_t>(b, res - 1)};
        };
        if (dims == 2) {
            auto [y0, y1] = row_range(1, c[1]);
            for (std::int64_t iy = y0; iy <= y1; ++iy) {
                const double dy = mid(1, iy) - c[1];
                const double s2 = rr2 - dy * dy;
                if (s2 >= 0.0) stamp_row(iy, 0, c[0], s2);
            }
        } else {
            auto [z0, z1] = row_range(2, c[2]);
            for (std::int64_t iz = z0; iz <= z1; ++iz) {
                const double dz = mid(2, iz) - c[2];
                const double s2z = rr2 - dz * dz;
                if (s2z < 0.0) continue;
                auto [y0, y1] = row_range(1, c[1]);
                for (std::int64_t iy = y0; iy <= y1; ++iy) {
                    const double dy = mid(1, iy) - c[1];
                    const double s2 = s2z - dy * dy;
                    if (s2 >= 0.0) stamp_row(iy, iz, c[0], s2);
                }
            }
        }
    }

    // min/max squared distance from c to the closed cell box along one axis
    void axis_minmax(int axis, std::int64_t idx, double cc, double& dmin, double& dmax) const {
        const double a = lo[axis] + idx * h[axis];
        const double b = a + h[axis];
        const double da = std::fabs(cc - a), db = std::fabs(cc - b);
        dmax = std::max(da, db);
        dmin = (cc >= a && cc <= b) ? 0.0 : std::min(da, db);
    }

    void mark_dirty_ball(const Point& c, double rr) {
        const double rr2 = rr * rr;
        auto cell_range = [&](int axis, double cc) {
            auto a = static_cast<std::int64_t>(std::floor((cc - rr - lo[axis]) / h[axis])) - 1;
            auto b = static_cast<std::int64_t>(std::floor((cc + rr - lo[axis]) / h[axis])) + 1;
            return std::pair<std::int64_t, std::int64_t>{std::max<std::int64_t>(a, 0),
                                                         std::min<std::int64_t>(b, res - 1)};
        };
        auto [x0, x1] = cell_range(0, c[0]);
        std::pair<std::int64_t, std::int64_t> yr{0, 0}, zr{0, 0};
        if (dims >= 2) yr = cell_range(1, c[1]);
        if (dims >= 3) zr = cell_range(2, c[2]);
        for (std::int64_t iz = zr.first; iz <= zr.second; ++iz) {
            double zmin = 0.0, zmax = 0.0;
            if (dims >= 3) axis_minmax(2, iz, c[2], zmin, zmax);
            for (std::int64_t iy = yr.first; iy <= yr.second; ++iy) {
                double ymin = 0.0, ymax = 0.0;
                if (dims >= 2) axis_minmax(1, iy, c[1], ymin, ymax);
                for (std::int64_t ix = x0; ix <= x1; ++ix) {
                    double xmin, xmax;
                    axis_minmax(0, ix, c[0], xmin, xmax);
                    const double dmin2 = xmin * xmin + ymin * ymin + zmin * zmin;
                    const double dmax2 = xmax * xmax + ymax * ymax + zmax * zmax;
                    if (dmin2 <= rr2 && dmax2 >= rr2) dirty[flat(ix, iy, iz)] = 1;
                }
            }
        }
    }

    void stamp_box(const Point& c, double half) {
        std::array<std::int64_t, 3> a{0, 0, 0}, b{0, 0, 0};
        for (int ax = 0; ax < dims; ++ax) {
            auto i0 = static_cast<std::int64_t>(std::floor((c[ax] - half - lo[ax]) / h[ax] - 0.5)) - 1;
            auto i1 = static_cast<std::int64_t>(std::ceil((c[ax] + half - lo[ax]) / h[ax] - 0.5)) + 1;
            i0 = std::max<std::int64_t>(i0, 0);
            i1 = std::min<std::int64_t>(i1, res - 1);
            while (i0 <= i1 && std::fabs(mid(ax, i0) - c[ax]) > half) ++i0;
            while (i1 >= i0 && std::fabs(mid(ax, i1) - c[ax]) > half) --i1;
            if (i0 > i1) return;
            a[ax] = i0;
            b[ax] = i1;
        }
        for (std::int64_t iz = a[2]; iz <= b[2]; ++iz)
            for (std::int64_t iy = a[1]; iy <= b[1]; ++iy)
                for (std::int64_t ix = a[0]; ix <= b[0]; ++ix) bump(flat(ix, iy, iz));
    }

    void mark_dirty_box(const Point& c, double half) {
        // cells meeting the closed box but not strictly inside it
        std::array<std::int64_t, 3> a{0, 0, 0}, b{0, 0, 0};
        std::array<std::int64_t, 3> ia{0, 0, 0}, ib{-1, -1, -1};
        for (int ax = 0; ax < dims; ++ax) {
            auto t0 = static_cast<std::int64_t>(std::floor((c[ax] - half - lo[ax]) / h[ax])) - 1;
            auto t1 = static_cast<std::int64_t>(std::floor((c[ax] + half - lo[ax]) / h[ax])) + 1;
            a[ax] = std::max<std::int64_t>(t0, 0);
            b[ax] = std::min<std::int64_t>(t1, res - 1);
            auto touch = [&](std::int64_t i) {
                return lo[ax] + i * h[ax] <= c[ax] + half && lo[ax] + (i + 1) * h[ax] >= c[ax] - half;
            };
            while (a[ax] <= b[ax] && !touch(a[ax])) ++a[ax];
            while (b[ax] >= a[ax] && !touch(b[ax])) --b[ax];
            if (a[ax] > b[ax]) return;
            // contained sub-range
            ia[ax] = a[ax];
            ib[ax] = b[ax];
            auto contained = [&](std::int64_t i) {
                return lo[ax] + i * h[ax] >= c[ax] - half && lo[ax] + (i + 1) * h[ax] <= c[ax] + half;
            };
            while (ia[ax] <= ib[ax] && !contained(ia[ax])) ++ia[ax];
            while (ib[ax] >= ia[ax] && !contained(ib[ax])) --ib[ax];
        }
        auto inside_core = [&](std::int64_t ix, std::int64_t iy, std::int64_t iz) {
            if (ix < ia[0] || ix > ib[0]) return false;
            if (dims >= 2 && (iy < ia[1] || iy > ib[1])) return false;
            if (dims >= 3 && (iz < ia[2] || iz > ib[2])) return false;
            return true;
        };
        for (std::int64_t iz = a[2]; iz <= b[2]; ++iz)
            for (std::int64_t iy = a[1]; iy <= b[1]; ++iy)
                for (std::int64_t ix = a[0]; ix <= b[0]; ++ix)
                    if (!inside_core(ix, iy, iz)) dirty[flat(ix, iy, iz)] = 1;
    }
};

}  // namespace grid_detail

/// Midpoint-rule k-vacancy on a resolution^d grid for each k in ks (one
/// shared depth pass). error_bound = |R| * (#cells cut by any shape
/// boundary) / (#cells): cells not cut have constant depth, so the midpoint
/// classifies them exactly, making the bound rigorous for every k.
inline std::vector<VacancyMeasurement> vacancy_grid_multi(const SensorField& field,
                                                          const std::vector<int>& ks,
                                                          int resolution) {
    for (int k : ks)
        if (k < 1) throw std::invalid_argument("vacancy_grid: k >= 1 required");
    const ShapeSpec& shape = field.shape;
    if (shape.kind == ShapeSpec::Kind::Generic)
        throw std::invalid_argument("vacancy_grid: generic shapes are not supported");
    grid_detail::DepthGrid grid(field.region, resolution);
    const Region& R = field.region;

    auto place = [&](const Point& c) {
        if (shape.kind == ShapeSpec::Kind::Disc) {
            const double rr = shape.size * shape.delta;
            grid.stamp_ball(c, rr);
            grid.mark_dirty_ball(c, rr);
        } else {
            const double half = 0.5 * shape.size * shape.delta;
            grid.stamp_box(c, half);
            grid.mark_dirty_box(c, half);
        }
    };

    const double reach = shape.reach();
    for (const auto& p : field.sample.points) {
        if (field.sample.mode == BoundaryMode::Torus) {
            std::array<std::vector<double>, 3> shifts;
            for (int ax = 0; ax < R.dims; ++ax) {
                shifts[ax].push_back(0.0);
                const double L = R.side(ax);
                if (p[ax] - reach < R.lo[ax]) shifts[ax].push_back(L);
                if (p[ax] + reach > R.hi[ax]) shifts[ax].push_back(-L);
            }
            for (int ax = R.dims; ax < 3; ++ax) shifts[ax].push_back(0.0);
            for (double sx : shifts[0])
                for (double sy : shifts[1])
                    for (double sz : shifts[2]) place(Point{p[0] + sx, p[1] + sy, p[2] + sz});
        } else {
            place(p);
        }
    }

    int kmax = 1;
    for (int k : ks) kmax = std::max(kmax, k);
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(kmax), 0);
    std::uint64_t dirty_count = 0;
    for (std::size_t i = 0; i < grid.depth.size(); ++i) {
        if (grid.depth[i] < kmax) ++hist[grid.depth[i]];
        dirty_count += grid.dirty[i];
    }
    const double cell_vol = R.volume() / static_cast<double>(grid.depth.size());
    std::vector<VacancyMeasurement> out;
    out.reserve(ks.size());
    for (int k : ks) {
        std::uint64_t below = 0;
        for (int d = 0; d < k; ++d) below += hist[d];
        VacancyMeasurement m;
        m.value = cell_vol * static_cast<double>(below);
        m.method = VacancyMeasurement::Method::Grid;
        m.resolution = resolution;
        m.error_bound = cell_vol * static_cast<double>(dirty_count);
        out.push_back(m);
    }
    return out;
}

inline VacancyMeasurement vacancy_grid(const SensorField& field, int k, int resolution) {
    return vacancy_grid_multi(field, {k}, resolution).front();
}

/// Exact k-vacancy for 1-d fields via the interval sweep.
inline VacancyMeasurement exact_vacancy_1d(const SensorField& field, int k) {
    if (field.region.dims != 1) throw std::invalid_argument("exact_vacancy_1d: dims must be 1");
    if (field.shape.kind == ShapeSpec::Kind::Generic)
        throw std::invalid_argument("exact_vacancy_1d: generic shapes are not supported");
    const double half = field.shape.reach();
    const double lo = field.region.lo[0];
    const double horizon = field.region.side(0);
    std::vector<Interval> iv;
    iv.reserve(field.sample.points.size());
    for (const auto& p : field.sample.points) iv.push_back({p[0] - half - lo, p[0] + half - lo});
    const DepthProfile prof = build_depth_profile(std::move(iv), horizon);
    VacancyMeasurement m;
    m.value = measure_below(prof, k);
    m.method = VacancyMeasurement::Method::Exact1D;
    m.error_bound = 0.0;
    return m;
}

// ---------------------------------------------------------------------------
// Exact complete-k-coverage via crossings (d = 2, discs).
// ---------------------------------------------------------------------------

namespace coverage_detail {

constexpr double kInteriorTol = 1e-12;

/// True when q is a strict interior point of at least k discs.
inline bool strictly_k_covered(const SpatialHash2D& hash, const Point& q, double radius, int k) {
    const double r_strict = radius - kInteriorTol;
    if (!(r_strict > 0.0)) return false;
    const double r2 = r_strict * r_strict;
    int depth = 0;
    hash.for_each_within(q, radius, [&](std::uint32_t, double d2) {
        if (d2 < r2 && ++depth >= k) return false;
        return true;
    });
    return depth >= k;
}

inline bool fully_k_covered(const std::vector<Point>& centers, double radius, int k,
                            const Region& region) {
    if (centers.empty()) return false;
    double lo_x = region.lo[0], lo_y = region.lo[1], hi_x = region.hi[0], hi_y = region.hi[1];
    for (const auto& c : centers) {
        lo_x = std::min(lo_x, c[0]);
        lo_y = std::min(lo_y, c[1]);
        hi_x = std::max(hi_x, c[0]);
        hi_y = std::max(hi_y, c[1]);
    }
    SpatialHash2D hash(centers, std::max(radius, 1e-9), lo_x, lo_y, hi_x, hi_y);
    bool any_crossing = false;
    const bool all_covered =
        for_each_crossing(centers, radius, region, [&](const Crossing& x) {
            any_crossing = true;
            return strictly_k_covered(hash, x.p, radius, k);
        });
    if (!any_crossing) {
        // No crossing in R: a disc covering a region corner must contain all
        // of R (its circle misses the connected boundary), so corner depth
        // equals the full-region depth.
        Point corner{region.lo[0], region.lo[1], 0.0};
        return strictly_k_covered(hash, corner, radius, k);
    }
    return all_covered;
}

}  // namespace coverage_detail

/// Exact boolean complete-k-coverage test: crossings exist and each is a
/// strict interior point of >= k discs, with the contained-region fallback
/// when the arrangement has no crossing inside R.
inline bool is_fully_k_covered(const SensorField& field, int k) {
    if (field.region.dims != 2 || field.shape.kind != ShapeSpec::Kind::Disc)
        throw std::invalid_argument("is_fully_k_covered: d=2 disc fields only");
    if (field.sample.mode == BoundaryMode::Torus)
        throw std::invalid_argument("is_fully_k_covered: torus mode not supported");
    if (k < 1) throw std::invalid_argument("is_fully_k_covered: k >= 1 required");
    return coverage_detail::fully_k_covered(field.sample.points, field.shape.size * field.shape.delta,
                                            k, field.region);
}

/// All crossings of the field's disc arrangement within the closed region.
inline std::vector<Crossing> crossings(const SensorField& field) {
    if (field.region.dims != 2 || field.shape.kind != ShapeSpec::Kind::Disc)
        throw std::invalid_argument("crossings: d=2 disc fields only");
    return circle_crossings(field.sample.points, field.shape.size * field.shape.delta, field.region);
}

namespace coverage_detail {

/// k-th nearest center distance from q (the coverage radius needed at q).
inline double kth_nearest_dist(const SpatialHash2D& hash, const Point& q, int k, double start_r,
                               double max_r) {
    std::vector<double> best;
    best.reserve(k);
    double r = std::max(start_r, 1e-9);
    while (true) {
        best.clear();
        hash.for_each_within(q, r, [&](std::uint32_t, double d2) {
            const double d = std::sqrt(d2);
            auto it = std::lower_bound(best.begin(), best.end(), d);
            if (static_cast<int>(best.size()) < k) {
                best.insert(it, d);
            } else if (it != best.end()) {
                best.insert(it, d);
                best.pop_back();
            }
            return true;
        });
        if (static_cast<int>(best.size()) >= k && best.back() <= r) return best.back();
        if (r >= max_r) return best.empty() ? max_r : std::min(best.back(), max_r);
        r = std::min(2.0 * r, max_r);
    }
}

}  // namespace coverage_detail

/// Critical radius r* = inf{r : the unit square is completely k-covered}.
/// The exact crossing predicate is monotone in r for fixed centers; a
/// Lipschitz grid scan of the k-th-nearest distance pins a narrow certain
/// bracket first (dist_k is 1-Lipschitz), then bisection runs the exact
/// test until the bracket width drops below tol.
inline double critical_radius_star(const std::vector<Point>& points, int k, double tol = 1e-6) {
    if (points.empty()) throw std::invalid_argument("critical_radius_star: empty point set");
    if (k < 1) throw std::invalid_argument("critical_radius_star: k >= 1 required");
    if (static_cast<int>(points.size()) < k)
        throw std::invalid_argument("critical_radius_star: fewer than k points");
    if (!(tol > 0.0)) throw std::invalid_argument("critical_radius_star: tol must be > 0");
    const Region square = Region::unit_cube(2);
    const double diag = std::numbers::sqrt2;

    double lo_x = 0.0, lo_y = 0.0, hi_x = 1.0, hi_y = 1.0;
    for (const auto& c : points) {
        lo_x = std::min(lo_x, c[0]);
        lo_y = std::min(lo_y, c[1]);
        hi_x = std::max(hi_x, c[0]);
        hi_y = std::max(hi_y, c[1]);
    }
    const double cell = std::max(1.0 / std::sqrt(static_cast<double>(points.size())), 1e-3);
    SpatialHash2D hash(points, cell, lo_x, lo_y, hi_x, hi_y);

    const int g = 256;
    double r_lb = 0.0;
    for (int iy = 0; iy < g; ++iy)
        for (int ix = 0; ix < g; ++ix) {
            Point q{(ix + 0.5) / g, (iy + 0.5) / g, 0.0};
            r_lb = std::max(r_lb,
                            coverage_detail::kth_nearest_dist(hash, q, k, cell, 2.0 * diag));
        }
    double lo = std::max(0.0, r_lb - 1e-9);
    double hi = r_lb + std::numbers::sqrt2 / (2.0 * g) + 1e-9;

    auto covered = [&](double r) {
        return coverage_detail::fully_k_covered(points, r, k, square);
    };
    int guard = 0;
    while (!covered(hi)) {
        hi += std::numbers::sqrt2 / g;
        if (++guard > 8)
            throw std::runtime_error("critical_radius_star: failed to bracket r*");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (covered(mid))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Path coverage.
// ---------------------------------------------------------------------------

/// Straight-line target path along axis 1 at speed c for T time units.
struct PathSpec {
    Point start{0.0, 0.0, 0.0};
    double speed = 1.0;
    double horizon = 1.0;

    void validate() const {
        if (!(speed > 0.0)) throw std::invalid_argument("PathSpec: speed must be > 0");
        if (!(horizon >= 0.0)) throw std::invalid_argument("PathSpec: horizon < 0");
    }
    Point position(double t) const { return Point{start[0] + speed * t, start[1], start[2]}; }
};

/// Geometric cover window of one sensor: the times with
/// |position(t) - center| <= delta r, clipped to [0, T]. Empty when the
/// sensor misses the path tube.
inline Interval cover_window(const SensorField& field, const PathSpec& path, const Point& center) {
    const double r = field.shape.size * field.shape.delta;
    double cross2 = 0.0;
    for (int ax = 1; ax < field.region.dims; ++ax) {
        const double d = path.start[ax] - center[ax];
        cross2 += d * d;
    }
    const double s2 = r * r - cross2;
    if (s2 < 0.0) return {0.0, 0.0};
    const double w = std::sqrt(s2) / path.speed;
    const double tc = (center[0] - path.start[0]) / path.speed;
    return {std::max(0.0, tc - w), std::min(path.horizon, tc + w)};
}

/// Supplies each relevant sensor's on-subintervals of its geometric window,
/// called in ascending sensor index (the determinism contract).
using OnIntervalProvider =
    std::function<void(std::size_t sensor, const Interval& window, std::vector<Interval>& out)>;

/// Depth profile of the covered times: per relevant sensor, the geometric
/// window intersected with its on-intervals, swept into a piecewise-constant
/// depth partition of [0, T).
inline DepthProfile path_cover_intervals(const SensorField& field, const PathSpec& path,
                                         const OnIntervalProvider& provider) {
    path.validate();
    if (field.shape.kind != ShapeSpec::Kind::Disc)
        throw std::invalid_argument("path_cover_intervals: disc shapes only");
    std::vector<Interval> cover;
    std::vector<Interval> scratch;
    for (std::size_t i = 0; i < field.sample.points.size(); ++i) {
        const Interval w = cover_window(field, path, field.sample.points[i]);
        if (w.empty()) continue;
        scratch.clear();
        provider(i, w, scratch);
        for (const auto& iv : scratch) {
            Interval clipped{std::max(iv.a, w.a), std::min(iv.b, w.b)};
            if (!clipped.empty()) cover.push_back(clipped);
        }
    }
    return build_depth_profile(std::move(cover), path.horizon);
}

inline const OnIntervalProvider kAlwaysOn =
    [](std::size_t, const Interval& w, std::vector<Interval>& out) { out.push_back(w); };

/// Spec-literal form: explicit per-sensor trajectories over the full
/// horizon, indexed like the field's sensors.
inline DepthProfile path_cover_intervals(const SensorField& field, const PathSpec& path,
                                         const std::vector<OnOffTrajectory>& trajectories) {
    if (trajectories.size() != field.sample.points.size())
        throw std::invalid_argument("path_cover_intervals: one trajectory per sensor required");
    return path_cover_intervals(field, path,
                                [&](std::size_t i, const Interval&, std::vector<Interval>& out) {
                                    for (const auto& iv : trajectories[i].on_intervals)
                                        out.push_back(iv);
                                });
}

/// Markov provider: samples the stationary chain restricted to each
/// sensor's window (equivalent in law to restricting a full-horizon
/// trajectory, and far cheaper on long paths).
inline OnIntervalProvider markov_provider(const OnOffParams& oo, Rng& rng) {
    return [&oo, &rng](std::size_t, const Interval& w, std::vector<Interval>& out) {
        OnOffTrajectory t = sample_trajectory_window(oo, w.a, w.b, rng);
        out = std::move(t.on_intervals);
    };
}

/// V_{k,T}: time in [0, T] with fewer than k sensors covering the target.
inline VacancyMeasurement path_vacancy(const DepthProfile& profile, int k) {
    if (k < 1) throw std::invalid_argument("path_vacancy: k >= 1 required");
    VacancyMeasurement m;
    m.value = measure_below(profile, k);
    m.method = VacancyMeasurement::Method::Exact1D;
    m.error_bound = 0.0;
    return m;
}

inline VacancyMeasurement path_vacancy(const SensorField& field, const PathSpec& path,
                                       const OnIntervalProvider& provider, int k) {
    return path_vacancy(path_cover_intervals(field, path, provider), k);
}

/// Fast-switching limit (a0 = infinity): over each constant-geometric-depth
/// piece the chain product mixes instantly, so the uncovered fraction is the
/// stationary P(Bin(depth, p1) <= k-1).
inline VacancyMeasurement path_vacancy_fast_switching(const SensorField& field,
                                                      const PathSpec& path, double p1, int k) {
    if (k < 1) throw std::invalid_argument("path_vacancy: k >= 1 required");
    if (!(p1 >= 0.0 && p1 <= 1.0)) throw std::invalid_argument("path_vacancy: p1 in [0,1]");
    const DepthProfile prof = path_cover_intervals(field, path, kAlwaysOn);
    auto binom_cdf_below = [&](int depth) {
        double sum = 0.0;
        double term = std::pow(1.0 - p1, depth);  // j = 0
        for (int j = 0; j < k; ++j) {
            if (j > 0) {
                term *= (depth - j + 1) / static_cast<double>(j) * p1 / (1.0 - p1);
            }
            sum += term;
            if (j >= depth) break;
        }
        return std::min(1.0, sum);
    };
    VacancyMeasurement m;
    m.method = VacancyMeasurement::Method::Exact1D;
    m.error_bound = 0.0;
    for (const auto& piece : prof) {
        if (piece.depth < k) {
            m.value += piece.b - piece.a;
        } else if (p1 < 1.0) {
            m.value += (piece.b - piece.a) * binom_cdf_below(piece.depth);
        }
    }
    return m;
}

}  // namespace mpb
