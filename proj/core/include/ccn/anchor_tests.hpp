#pragma once

#include <vector>

#include "ccn/logistic_mle.hpp"

namespace ccn {

/// k anchor points (rows, intercept-augmented) whose clean posterior is
/// 1/2 (delta == 0) or 1/2 + U(-delta, delta) (relaxed).
class AnchorSet {
public:
    AnchorSet(Matrix points, double delta = 0.0);

    /// Prepends the intercept column to raw anchor features.
    static AnchorSet from_raw(const Matrix& raw_points, double delta = 0.0);

    const Matrix& points() const noexcept { return points_; }
    double delta() const noexcept { return delta_; }
    Eigen::Index k() const noexcept { return points_.rows(); }
    Eigen::Index dim() const noexcept { return points_.cols(); }
    Vector point(Eigen::Index i) const { return points_.row(i).transpose(); }
    /// Centroid x_bar = (1/k) sum_i x_i.
    Vector centroid() const { return points_.colwise().mean().transpose(); }

    AnchorSet with_delta(double delta) const { return AnchorSet(points_, delta); }

private:
    Matrix points_;
    double delta_;
};

struct AnchorMoments {
    double eta_bar;  // mean fitted posterior over anchors
    double v_bar;    // (1/16) x_bar^T H^{-1} x_bar
};

struct TestReport {
    double eta_bar = 0.0;
    double variance = 0.0;
    double z = 0.0;
    double p_value = 1.0;
    double significance = 0.05;
    double retain_lower = 0.0;
    double retain_upper = 1.0;
    bool reject = false;
    long k = 1;
    double delta = 0.0;

    friend bool operator==(const TestReport&, const TestReport&) = default;
};

AnchorMoments anchor_mean_and_variance(const FittedModel& model, const AnchorSet& anchors);

/// Null variance of eta_bar assembled from per-anchor variances and pairwise
/// covariances, (1/k^2)[sum_i V_i + 2 sum_{i<j} C_ij] with C_ij = x_i^T H x_j / 16.
/// Algebraically equal to the centroid form.
double pairwise_anchor_variance(const FittedModel& model, const AnchorSet& anchors);

/// (1/16 - delta^2/6) x_bar^T H x_bar + delta^2 / (3k).
double relaxed_variance(const FittedModel& model, const AnchorSet& anchors);

/// Two-sided z-test of H0: alpha == beta using the anchor statistic.
/// Uses relaxed_variance when anchors.delta() > 0.
TestReport z_test(const FittedModel& model, const AnchorSet& anchors, double significance);

/// The decision step alone, from a statistic and its null variance.
TestReport z_test_from_statistic(double eta_bar, double variance, double significance, long k = 1,
                                 double delta = 0.0);

/// Mean of the anchor posterior under CCN(alpha, beta): (1 - alpha + beta) / 2.
double alternative_mean(double alpha, double beta);

/// Variance under the alternative, [m(1-m)]^2 x^T H x with m = alternative_mean.
double alternative_variance(double quad_form, double alpha, double beta);

/// Power 1 - b of the test for one anchor (or any k, given the variances of
/// the k-anchor statistic).
double power(double alpha, double beta, double v, double v_tilde, double significance);

/// Power with k random anchors, substituting v/k and v_tilde/k.
double power_with_anchors(double alpha, double beta, double v, double v_tilde, long k, double significance);

/// Type II error ratio b_k / b_1 with h = (beta - alpha)/2.
double power_ratio(double h, double v, double v_tilde, long k, double significance);

/// Expected x^T H x over random anchors, d c^2 q / (3k), with q = tr(H).
double expected_random_anchor_variance(long d, double c, double q, long k);

struct PowerCurvePoint {
    long k;
    double gap;  // beta - alpha
    double power;
};

/// Power as a function of beta - alpha in [0, max_gap] (alpha = 0), one curve per k.
std::vector<PowerCurvePoint> power_curves(double v, double v_tilde, double significance,
                                          const std::vector<long>& ks, double max_gap = 0.9,
                                          int steps = 90);

}  // namespace ccn
