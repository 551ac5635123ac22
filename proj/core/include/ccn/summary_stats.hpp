#pragma once

#include <span>
#include <vector>

namespace ccn {

/// Box-plot statistics. Quartiles use linear interpolation between order
/// statistics (position (n-1) q); whiskers are Q1 - 1.5 IQR and Q3 + 1.5 IQR,
/// not clipped to the data.
struct BoxStats {
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
    double whisker_lo = 0.0;
    double whisker_hi = 0.0;
    std::size_t count = 0;
};

double quantile(std::span<const double> values, double q);
BoxStats box_stats(std::span<const double> values);

double mean(std::span<const double> values);
/// Unbiased sample variance.
double sample_variance(std::span<const double> values);

/// Fraction of values strictly below `threshold`.
double fraction_below(std::span<const double> values, double threshold);

/// One-sample Kolmogorov-Smirnov statistic against Uniform(0, 1).
double ks_uniform_statistic(std::span<const double> values);

/// Asymptotic KS critical value: 1.62762 / sqrt(n) at the 1% level,
/// 1.35810 / sqrt(n) at 5%.
double ks_critical_value(std::size_t n, double level = 0.01);

}  // namespace ccn
