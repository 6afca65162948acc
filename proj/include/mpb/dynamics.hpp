#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mpb/intervals.hpp"
#include "mpb/rng.hpp"

namespace mpb {

/// Two-state stationary Markov chain: rate mu0 leaves state 0 (off->on),
/// rate mu1 leaves state 1 (on->off). p_j = mu_{1-j} / (mu0 + mu1).
struct OnOffParams {
    double mu0 = 1.0;
    double mu1 = 1.0;
    double p0 = 0.5;
    double p1 = 0.5;
    double gamma = 2.0;

    static OnOffParams from_rates(double mu0, double mu1) {
        if (!(mu0 > 0.0) || !(mu1 > 0.0))
            throw std::invalid_argument("OnOffParams: rates must be > 0");
        OnOffParams p;
        p.mu0 = mu0;
        p.mu1 = mu1;
        p.gamma = mu0 + mu1;
        p.p1 = mu0 / p.gamma;
        p.p0 = mu1 / p.gamma;
        return p;
    }

    /// Stationary parameterization; gamma = 0 gives the frozen chain (the
    /// a0 = 0 scaling regime endpoint).
    static OnOffParams from_stationary(double p1, double gamma) {
        if (!(p1 >= 0.0 && p1 <= 1.0)) throw std::invalid_argument("OnOffParams: p1 in [0,1]");
        if (!(gamma >= 0.0) || !std::isfinite(gamma))
            throw std::invalid_argument("OnOffParams: gamma must be finite and >= 0");
        OnOffParams p;
        p.gamma = gamma;
        p.p1 = p1;
        p.p0 = 1.0 - p1;
        p.mu0 = p1 * gamma;
        p.mu1 = (1.0 - p1) * gamma;
        return p;
    }
};

/// One sensor's on-intervals within a horizon; sorted, disjoint, half-open.
struct OnOffTrajectory {
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<Interval> on_intervals;
};

/// Stationary start (Bernoulli(p1) at window start), then alternating
/// exponential holding times. `sample_trajectory(params, T, rng)` covers
/// [0, T]; the windowed form samples the restriction of the stationary
/// chain to [t0, t1], which is what the path pipeline needs per sensor.
inline OnOffTrajectory sample_trajectory_window(const OnOffParams& params, double t0, double t1,
                                                Rng& rng) {
    if (!(t1 >= t0)) throw std::invalid_argument("sample_trajectory: empty window");
    OnOffTrajectory traj;
    traj.t0 = t0;
    traj.t1 = t1;
    int state = rng.bernoulli(params.p1) ? 1 : 0;
    if (t1 == t0) return traj;
    if (params.gamma == 0.0) {  // frozen chain
        if (state == 1) traj.on_intervals.push_back({t0, t1});
        return traj;
    }
    double t = t0;
    while (t < t1) {
        const double rate = (state == 1) ? params.mu1 : params.mu0;
        double next;
        if (rate > 0.0) {
            next = t + rng.exponential(rate);
        } else {
            next = t1;  // absorbing (p1 = 0 or 1 with gamma > 0)
        }
        if (state == 1) traj.on_intervals.push_back({t, std::min(next, t1)});
        t = next;
        state = 1 - state;
    }
    return traj;
}

inline OnOffTrajectory sample_trajectory(const OnOffParams& params, double horizon, Rng& rng) {
    if (!(horizon >= 0.0)) throw std::invalid_argument("sample_trajectory: horizon < 0");
    return sample_trajectory_window(params, 0.0, horizon, rng);
}

/// State at time t in [t0, t1]; binary search over on-intervals (half-open,
/// so t == interval end reads as off).
inline int state_at(const OnOffTrajectory& traj, double t) {
    if (t < traj.t0 || t > traj.t1) throw std::out_of_range("state_at: t outside horizon");
    const auto& iv = traj.on_intervals;
    auto it = std::upper_bound(iv.begin(), iv.end(), t,
                               [](double x, const Interval& i) { return x < i.a; });
    if (it == iv.begin()) return 0;
    --it;
    return (t >= it->a && t < it->b) ? 1 : 0;
}

inline double total_on_time(const OnOffTrajectory& traj) {
    double s = 0.0;
    for (const auto& iv : traj.on_intervals) s += iv.length();
    return s;
}

}  // namespace mpb
