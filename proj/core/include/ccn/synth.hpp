#pragma once

#include <cstdint>

#include "ccn/anchor_tests.hpp"
#include "ccn/dataset.hpp"

namespace ccn {

/// Two Gaussian classes with identity covariance.
///
/// With shared identity covariance the Bayes posterior is exactly logistic:
///   log p(x|+)/p(x|-) = (mu+ - mu-)^T x - (|mu+|^2 - |mu-|^2)/2,
/// so theta_true = (log(pi/(1-pi)) - (|mu+|^2 - |mu-|^2)/2, mu+ - mu-).
/// The defaults give theta_true = (0, 2, 2).
class GaussianSetup {
public:
    GaussianSetup();
    GaussianSetup(Vector mean_pos, Vector mean_neg, double prior = 0.5);

    const Vector& mean_pos() const noexcept { return mean_pos_; }
    const Vector& mean_neg() const noexcept { return mean_neg_; }
    double prior() const noexcept { return prior_; }
    const Vector& theta_true() const noexcept { return theta_true_; }
    /// Number of raw feature columns (d - 1).
    Eigen::Index raw_dim() const noexcept { return mean_pos_.size(); }

    /// Bayes posterior sigma(theta_true^T x) for an intercept-augmented x.
    double posterior(const Vector& x) const;

private:
    Vector mean_pos_;
    Vector mean_neg_;
    double prior_;
    Vector theta_true_;
};

/// n i.i.d. draws: label ~ Bernoulli(prior) on {-1,+1}, features ~ N(mean_label, I).
/// Throws DatasetError in the (small-n) event that only one class is drawn.
Dataset generate(const GaussianSetup& setup, Eigen::Index n, std::uint64_t seed);

/// Anchors on the Bayes boundary. All but one raw coordinate are drawn from
/// U[-c, c] and the remaining one (the last coordinate with the largest
/// |weight|) is solved so that theta_true^T x = 0; for the default setup this
/// is (1, t, -t). With delta > 0 each point is then moved along the weight
/// vector so that its posterior is exactly 1/2 + eps, eps ~ U[-delta, delta].
/// The returned AnchorSet carries `delta`.
AnchorSet sample_anchors(const GaussianSetup& setup, Eigen::Index k, double delta, double range_half_width,
                         std::uint64_t seed);

}  // namespace ccn
