#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace mpb {

/// Half-open interval [a, b). Unions and complements of these partition
/// [0, T) exactly, with shared machine-exact endpoints.
struct Interval {
    double a = 0.0;
    double b = 0.0;
    double length() const { return b - a; }
    bool empty() const { return !(b > a); }
};

/// Piecewise-constant depth over [0, horizon): pieces are contiguous,
/// non-overlapping, and cover the horizon exactly.
struct DepthPiece {
    double a = 0.0;
    double b = 0.0;
    int depth = 0;
};

using DepthProfile = std::vector<DepthPiece>;

/// Sweep over interval endpoints. All deltas at an identical coordinate are
/// applied together, so depth never dips spuriously where one interval ends
/// exactly where another starts.
inline DepthProfile build_depth_profile(std::vector<Interval> intervals, double horizon) {
    if (!(horizon >= 0.0)) throw std::invalid_argument("build_depth_profile: horizon < 0");
    DepthProfile out;
    if (horizon == 0.0) return out;

    struct Event {
        double x;
        int delta;
    };
    std::vector<Event> ev;
    ev.reserve(2 * intervals.size());
    for (auto iv : intervals) {
        iv.a = std::max(iv.a, 0.0);
        iv.b = std::min(iv.b, horizon);
        if (iv.empty()) continue;
        ev.push_back({iv.a, +1});
        ev.push_back({iv.b, -1});
    }
    std::sort(ev.begin(), ev.end(), [](const Event& l, const Event& r) { return l.x < r.x; });

    double cursor = 0.0;
    int depth = 0;
    std::size_t i = 0;
    while (i < ev.size()) {
        const double x = ev[i].x;
        if (x > cursor) {
            out.push_back({cursor, x, depth});
            cursor = x;
        }
        int d = 0;
        while (i < ev.size() && ev[i].x == x) d += ev[i++].delta;
        depth += d;
    }
    if (cursor < horizon) out.push_back({cursor, horizon, depth});
    return out;
}

/// Measure of {t : depth(t) < k}.
inline double measure_below(const DepthProfile& profile, int k) {
    double m = 0.0;
    for (const auto& p : profile)
        if (p.depth < k) m += p.b - p.a;
    return m;
}

/// Total length of the union (depth >= 1).
inline double union_length(const DepthProfile& profile) {
    double m = 0.0;
    for (const auto& p : profile)
        if (p.depth >= 1) m += p.b - p.a;
    return m;
}

}  // namespace mpb
