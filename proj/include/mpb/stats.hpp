#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mpb {

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double se_mean = 0.0;
    double se_variance = 0.0;  // asymptotic: sqrt((m4 - m2^2)/n)
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double min = 0.0;
    double max = 0.0;
};

inline SampleSummary summarize(const std::vector<double>& xs) {
    SampleSummary s;
    s.n = xs.size();
    if (xs.empty()) return s;
    double sum = 0.0;
    s.min = s.max = xs[0];
    for (double x : xs) {
        sum += x;
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
    }
    s.mean = sum / xs.size();
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double n = static_cast<double>(xs.size());
    m2 /= n;
    m3 /= n;
    m4 /= n;
    s.variance = (xs.size() > 1) ? m2 * n / (n - 1.0) : 0.0;
    s.se_mean = (xs.size() > 1) ? std::sqrt(s.variance / n) : 0.0;
    s.se_variance = (xs.size() > 1) ? std::sqrt(std::max(0.0, m4 - m2 * m2) / n) : 0.0;
    if (m2 > 0.0) {
        s.skewness = m3 / std::pow(m2, 1.5);
        s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return s;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// One-sample Kolmogorov-Smirnov distance to the standard normal.
inline double ks_distance_normal(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("ks_distance_normal: empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = normal_cdf(xs[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

inline double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("pearson_correlation: mismatched or tiny samples");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

/// Two-sided binomial z-test p-value for an observed proportion.
inline double binomial_two_sided_pvalue(std::size_t hits, std::size_t n, double p) {
    if (n == 0) throw std::invalid_argument("binomial_two_sided_pvalue: n == 0");
    const double sd = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    if (sd == 0.0) return (static_cast<double>(hits) / n == p) ? 1.0 : 0.0;
    const double z = (static_cast<double>(hits) / n - p) / sd;
    return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

}  // namespace mpb
