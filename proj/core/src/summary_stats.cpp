#include "ccn/summary_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccn/errors.hpp"

namespace ccn {

namespace {

std::vector<double> sorted_copy(std::span<const double> values) {
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    return v;
}

double sorted_quantile(const std::vector<double>& v, double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
}

}  // namespace

double quantile(std::span<const double> values, double q) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("quantile level must lie in [0, 1]");
    return sorted_quantile(sorted_copy(values), q);
}

BoxStats box_stats(std::span<const double> values) {
    BoxStats b;
    b.count = values.size();
    if (values.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        b.q1 = b.q2 = b.q3 = b.whisker_lo = b.whisker_hi = nan;
        return b;
    }
    const auto v = sorted_copy(values);
    b.q1 = sorted_quantile(v, 0.25);
    b.q2 = sorted_quantile(v, 0.5);
    b.q3 = sorted_quantile(v, 0.75);
    const double iqr = b.q3 - b.q1;
    b.whisker_lo = b.q1 - 1.5 * iqr;
    b.whisker_hi = b.q3 + 1.5 * iqr;
    return b;
}

double mean(std::span<const double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double x : values) s += x;
    return s / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
    if (values.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = mean(values);
    double s = 0.0;
    for (double x : values) s += (x - m) * (x - m);
    return s / static_cast<double>(values.size() - 1);
}

double fraction_below(std::span<const double> values, double threshold) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    const auto hits = std::count_if(values.begin(), values.end(), [&](double x) { return x < threshold; });
    return static_cast<double>(hits) / static_cast<double>(values.size());
}

double ks_uniform_statistic(std::span<const double> values) {
    if (values.empty()) throw ParameterError("KS statistic needs at least one value");
    const auto v = sorted_copy(values);
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double u = std::clamp(v[i], 0.0, 1.0);
        d = std::max({d, static_cast<double>(i + 1) / n - u, u - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_value(std::size_t n, double level) {
    if (n == 0) throw ParameterError("KS critical value needs n >= 1");
    double c;
    if (level == 0.01) c = 1.62762;
    else if (level == 0.05) c = 1.35810;
    else if (level == 0.10) c = 1.22385;
    else throw ParameterError("KS critical value tabulated for levels 0.10, 0.05, 0.01 only");
    return c / std::sqrt(static_cast<double>(n));
}

}  // namespace ccn
