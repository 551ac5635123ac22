#include "ccn/anchor_tests.hpp"

#include <cmath>
#include <string>

#include "ccn/errors.hpp"
#include "ccn/normal.hpp"

namespace ccn {

namespace {

void check_significance(double a) {
    if (!(a > 0.0 && a < 1.0)) throw ParameterError("significance level must lie in (0, 1)");
}

void check_dims(const FittedModel& model, const AnchorSet& anchors) {
    if (anchors.dim() != model.dim()) {
        throw DimensionError("anchors have " + std::to_string(anchors.dim()) + " columns, model expects " +
                             std::to_string(model.dim()));
    }
}

// P(retain) under N(mean shift h, v_tilde) with retain region 1/2 +- z sqrt(v).
// Acceptance bounds and the alternative's offset in units of the alternative
// standard deviation. The k-anchor variances v/k and v_tilde/k enter only
// through v/v_tilde and k/v_tilde, so the curves for different k share the
// same bound exactly.
struct Standardized {
    double bound;
    double shift;
};

Standardized standardize(double h, long k, double v, double v_tilde, double significance) {
    if (!(v > 0.0) || !(v_tilde > 0.0)) throw ParameterError("variances must be positive");
    check_significance(significance);
    const double z = normal_quantile(1.0 - 0.5 * significance);
    return {z * std::sqrt(v / v_tilde), h * std::sqrt(static_cast<double>(k) / v_tilde)};
}

double type2_error(double h, long k, double v, double v_tilde, double significance) {
    const auto s = standardize(h, k, v, v_tilde, significance);
    return normal_interval(s.shift - s.bound, s.shift + s.bound);
}

double power_impl(double alpha, double beta, double v, double v_tilde, long k, double significance) {
    if (!(alpha >= 0.0 && beta >= 0.0 && alpha + beta < 1.0)) {
        throw ParameterError("noise rates require alpha, beta >= 0 and alpha + beta < 1");
    }
    const auto s = standardize(0.5 * (beta - alpha), k, v, v_tilde, significance);
    // 1 - b as the sum of the two rejection tails.
    return normal_cdf(s.shift - s.bound) + normal_sf(s.shift + s.bound);
}

}  // namespace

AnchorSet::AnchorSet(Matrix points, double delta) : points_(std::move(points)), delta_(delta) {
    if (points_.rows() < 1) throw AnchorError("anchor set is empty");
    if (points_.cols() < 1) throw AnchorError("anchor points have no coordinates");
    if (!points_.allFinite()) throw AnchorError("anchor coordinates must be finite");
    if (!(delta_ >= 0.0 && delta_ <= 0.5)) throw ParameterError("anchor relaxation delta must lie in [0, 0.5]");
}

AnchorSet AnchorSet::from_raw(const Matrix& raw_points, double delta) {
    if (raw_points.rows() < 1) throw AnchorError("anchor set is empty");
    return AnchorSet(add_intercept(raw_points), delta);
}

AnchorMoments anchor_mean_and_variance(const FittedModel& model, const AnchorSet& anchors) {
    check_dims(model, anchors);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < anchors.k(); ++i) sum += predict_posterior(model, anchors.point(i));
    const Vector centroid = anchors.centroid();
    return {sum / static_cast<double>(anchors.k()), quadratic_form(model, centroid) / 16.0};
}

double pairwise_anchor_variance(const FittedModel& model, const AnchorSet& anchors) {
    check_dims(model, anchors);
    const Eigen::Index k = anchors.k();
    double diag = 0.0;
    double off = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        const Vector xi = anchors.point(i);
        const Vector hxi = model.hessian_inv * xi;
        diag += xi.dot(hxi) / 16.0;
        for (Eigen::Index j = i + 1; j < k; ++j) off += anchors.point(j).dot(hxi) / 16.0;
    }
    const double kk = static_cast<double>(k);
    return (diag + 2.0 * off) / (kk * kk);
}

double relaxed_variance(const FittedModel& model, const AnchorSet& anchors) {
    const double delta = anchors.delta();
    if (delta > 0.5) throw ParameterError("delta must not exceed 0.5");
    const double strict = anchor_mean_and_variance(model, anchors).v_bar;
    const double d2 = delta * delta;
    const double quad = 16.0 * strict;
    return (1.0 / 16.0 - d2 / 6.0) * quad + d2 / (3.0 * static_cast<double>(anchors.k()));
}

TestReport z_test(const FittedModel& model, const AnchorSet& anchors, double significance) {
    check_significance(significance);
    const AnchorMoments m = anchor_mean_and_variance(model, anchors);
    const double variance = anchors.delta() > 0.0 ? relaxed_variance(model, anchors) : m.v_bar;
    return z_test_from_statistic(m.eta_bar, variance, significance, static_cast<long>(anchors.k()),
                                 anchors.delta());
}

TestReport z_test_from_statistic(double eta_bar, double variance, double significance, long k, double delta) {
    check_significance(significance);
    if (!(variance > 0.0)) throw DegenerateVarianceError("null variance of the anchor statistic is zero");
    TestReport r;
    r.eta_bar = eta_bar;
    r.variance = variance;
    r.significance = significance;
    r.k = k;
    r.delta = delta;
    const double sd = std::sqrt(variance);
    r.z = (eta_bar - 0.5) / sd;
    r.p_value = two_sided_p_value(r.z);
    const double z_hi = normal_quantile(1.0 - 0.5 * significance);
    r.retain_lower = -z_hi * sd + 0.5;
    r.retain_upper = z_hi * sd + 0.5;
    r.reject = r.p_value < significance;
    return r;
}

double alternative_mean(double alpha, double beta) { return 0.5 * (1.0 - alpha + beta); }

double alternative_variance(double quad_form, double alpha, double beta) {
    const double m = alternative_mean(alpha, beta);
    const double g = m * (1.0 - m);
    return g * g * quad_form;
}

double power(double alpha, double beta, double v, double v_tilde, double significance) {
    return power_impl(alpha, beta, v, v_tilde, 1, significance);
}

double power_with_anchors(double alpha, double beta, double v, double v_tilde, long k, double significance) {
    if (k < 1) throw ParameterError("k must be at least 1");
    return power_impl(alpha, beta, v, v_tilde, k, significance);
}

double power_ratio(double h, double v, double v_tilde, long k, double significance) {
    if (k < 1) throw ParameterError("k must be at least 1");
    if (k == 1) return 1.0;
    const double b1 = type2_error(h, 1, v, v_tilde, significance);
    const double bk = type2_error(h, k, v, v_tilde, significance);
    if (b1 == 0.0) return bk == 0.0 ? 1.0 : HUGE_VAL;
    return bk / b1;
}

double expected_random_anchor_variance(long d, double c, double q, long k) {
    if (d < 1 || k < 1 || !(c > 0.0)) throw ParameterError("requires d >= 1, k >= 1, c > 0");
    return static_cast<double>(d) * c * c * q / (3.0 * static_cast<double>(k));
}

std::vector<PowerCurvePoint> power_curves(double v, double v_tilde, double significance,
                                          const std::vector<long>& ks, double max_gap, int steps) {
    if (steps < 1) throw ParameterError("power curve needs at least one step");
    if (!(max_gap >= 0.0 && max_gap < 1.0)) throw ParameterError("gap range must lie in [0, 1)");
    std::vector<PowerCurvePoint> out;
    out.reserve(ks.size() * static_cast<std::size_t>(steps + 1));
    for (long k : ks) {
        for (int s = 0; s <= steps; ++s) {
            const double gap = max_gap * static_cast<double>(s) / static_cast<double>(steps);
            out.push_back({k, gap, power_with_anchors(0.0, gap, v, v_tilde, k, significance)});
        }
    }
    return out;
}

}  // namespace ccn
