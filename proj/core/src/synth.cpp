#include "ccn/synth.hpp"

#include <cmath>

#include "ccn/errors.hpp"
#include "ccn/logistic_mle.hpp"
#include "ccn/random.hpp"

namespace ccn {

GaussianSetup::GaussianSetup() : GaussianSetup(Vector::Constant(2, 1.0), Vector::Constant(2, -1.0), 0.5) {}

GaussianSetup::GaussianSetup(Vector mean_pos, Vector mean_neg, double prior)
    : mean_pos_(std::move(mean_pos)), mean_neg_(std::move(mean_neg)), prior_(prior) {
    if (mean_pos_.size() != mean_neg_.size() || mean_pos_.size() < 1) {
        throw DimensionError("class means must be non-empty and of equal length");
    }
    if (!(prior_ > 0.0 && prior_ < 1.0)) throw ParameterError("class prior must lie in (0, 1)");
    const Vector w = mean_pos_ - mean_neg_;
    if (w.isZero()) throw ParameterError("class means coincide; the posterior is constant");
    theta_true_.resize(w.size() + 1);
    theta_true_(0) = std::log(prior_ / (1.0 - prior_)) - 0.5 * (mean_pos_.squaredNorm() - mean_neg_.squaredNorm());
    theta_true_.tail(w.size()) = w;
}

double GaussianSetup::posterior(const Vector& x) const {
    if (x.size() != theta_true_.size()) throw DimensionError("posterior: dimension mismatch");
    return sigmoid(theta_true_.dot(x));
}

Dataset generate(const GaussianSetup& setup, Eigen::Index n, std::uint64_t seed) {
    if (n < 2) throw ParameterError("generate needs n >= 2");
    const Eigen::Index p = setup.raw_dim();
    Rng rng(seed);
    Matrix raw(n, p);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const bool positive = rng.bernoulli(setup.prior());
        labels[static_cast<std::size_t>(i)] = positive ? 1 : -1;
        const Vector& mean = positive ? setup.mean_pos() : setup.mean_neg();
        for (Eigen::Index j = 0; j < p; ++j) raw(i, j) = mean(j) + rng.normal();
    }
    return Dataset::from_raw(raw, std::move(labels));
}

AnchorSet sample_anchors(const GaussianSetup& setup, Eigen::Index k, double delta, double range_half_width,
                         std::uint64_t seed) {
    if (k < 1) throw AnchorError("need at least one anchor");
    if (!(delta >= 0.0 && delta <= 0.5)) throw ParameterError("delta must lie in [0, 0.5]");
    if (delta >= 0.5) throw ParameterError("delta = 0.5 can place a target posterior at 0 or 1");
    if (!(range_half_width > 0.0)) throw ParameterError("anchor range half-width must be positive");

    const Vector& theta = setup.theta_true();
    const double bias = theta(0);
    const Vector w = theta.tail(setup.raw_dim());
    Eigen::Index pivot = 0;
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        if (std::fabs(w(j)) >= std::fabs(w(pivot))) pivot = j;
    }

    Rng rng(seed);
    Matrix points(k, w.size() + 1);
    for (Eigen::Index i = 0; i < k; ++i) {
        Vector raw = Vector::Zero(w.size());
        double partial = bias;
        for (Eigen::Index j = 0; j < w.size(); ++j) {
            if (j == pivot) continue;
            raw(j) = rng.uniform(-range_half_width, range_half_width);
            partial += w(j) * raw(j);
        }
        raw(pivot) = -partial / w(pivot);
        if (delta > 0.0) {
            const double eps = rng.uniform(-delta, delta);
            raw += logit(0.5 + eps) / w.squaredNorm() * w;
        }
        points(i, 0) = 1.0;
        points.row(i).tail(w.size()) = raw.transpose();
    }
    return AnchorSet(std::move(points), delta);
}

}  // namespace ccn
