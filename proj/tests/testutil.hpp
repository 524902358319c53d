#pragma once

#include <cmath>

inline double rel_err(double got, double want) {
    if (want == 0.0) {
        return std::abs(got);
    }
    return std::abs(got - want) / std::abs(want);
}

#include <algorithm>
#include <functional>
#include <vector>

// One-sample Kolmogorov-Smirnov statistic D_n = sup |F_n - F| for sorted samples and their
// model CDF values.
inline double ks_statistic(const std::vector<double>& model_cdf_at_sorted) {
    const double n = static_cast<double>(model_cdf_at_sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < model_cdf_at_sorted.size(); ++i) {
        const double f = model_cdf_at_sorted[i];
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

// Asymptotic 1% critical value of D_n.
inline double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }
