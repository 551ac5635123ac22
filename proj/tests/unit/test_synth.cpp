#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ccn/errors.hpp"
#include "ccn/logistic_mle.hpp"
#include "ccn/synth.hpp"

namespace {

using ccn::GaussianSetup;
using ccn::Vector;

TEST(GaussianSetup, DefaultTheta) {
    const GaussianSetup s;
    EXPECT_EQ(s.theta_true(), (Vector(3) << 0, 2, 2).finished());
    EXPECT_EQ(s.raw_dim(), 2);
}

TEST(GaussianSetup, ThetaMatchesBayesPosterior) {
    const GaussianSetup s((Vector(2) << 0.5, 2.0).finished(), (Vector(2) << -1.0, 0.0).finished(), 0.3);
    for (double a : {-1.0, 0.0, 0.7}) {
        for (double b : {-2.0, 0.4, 1.5}) {
            const Vector x = (Vector(2) << a, b).finished();
            const double lp = 0.3 * std::exp(-0.5 * (x - s.mean_pos()).squaredNorm());
            const double ln = 0.7 * std::exp(-0.5 * (x - s.mean_neg()).squaredNorm());
            const Vector xa = (Vector(3) << 1, a, b).finished();
            EXPECT_NEAR(s.posterior(xa), lp / (lp + ln), 1e-14);
        }
    }
}

TEST(GaussianSetup, Validation) {
    EXPECT_THROW(GaussianSetup(Vector::Ones(2), Vector::Ones(3)), ccn::DimensionError);
    EXPECT_THROW(GaussianSetup(Vector::Ones(2), Vector::Ones(2)), ccn::ParameterError);
    EXPECT_THROW(GaussianSetup(Vector::Ones(2), -Vector::Ones(2), 1.0), ccn::ParameterError);
}

TEST(Generate, ClassBalanceAndMeans) {
    const GaussianSetup s;
    const auto d = ccn::generate(s, 100000, 5);
    EXPECT_NEAR(static_cast<double>(d.positive_count()) / 100000.0, 0.5, 0.01);
    Vector sum = Vector::Zero(3);
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d.labels()[static_cast<std::size_t>(i)] == 1) sum += d.features().row(i).transpose();
    }
    sum /= static_cast<double>(d.positive_count());
    EXPECT_NEAR(sum(1), 1.0, 0.02);
    EXPECT_NEAR(sum(2), 1.0, 0.02);
}

TEST(Generate, DeterministicCsv) {
    const GaussianSetup s;
    std::ostringstream a, b, c;
    ccn::write_dataset_csv(a, ccn::generate(s, 500, 42));
    ccn::write_dataset_csv(b, ccn::generate(s, 500, 42));
    ccn::write_dataset_csv(c, ccn::generate(s, 500, 43));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_NE(a.str(), c.str());
    EXPECT_THROW(ccn::generate(s, 1, 1), ccn::ParameterError);
}

TEST(Generate, FitErrorShrinksWithN) {
    const GaussianSetup s;
    auto rms_error = [&](long n) {
        double e = 0;
        for (std::uint64_t r = 0; r < 40; ++r) {
            const auto m = ccn::fit(ccn::generate(s, n, 1000 * n + r));
            e += (m.theta - s.theta_true()).squaredNorm();
        }
        return std::sqrt(e / 40);
    };
    const double e1 = rms_error(500), e2 = rms_error(8000);
    EXPECT_NEAR(e1 / e2, 4.0, 1.2);
}

TEST(SampleAnchors, StrictAnchorsLieOnBoundary) {
    const GaussianSetup s;
    const auto a = ccn::sample_anchors(s, 1000, 0.0, 4.0, 3);
    EXPECT_EQ(a.k(), 1000);
    EXPECT_EQ(a.delta(), 0.0);
    for (Eigen::Index i = 0; i < a.k(); ++i) {
        const Vector x = a.point(i);
        EXPECT_EQ(x(0), 1.0);
        EXPECT_EQ(s.theta_true().dot(x), 0.0);
        EXPECT_EQ(s.posterior(x), 0.5);
        EXPECT_LE(std::fabs(x(1)), 4.0);
        EXPECT_EQ(x(1), -x(2));
    }
}

TEST(SampleAnchors, RelaxedAnchorsRealizeUniformPosteriorOffsets) {
    const GaussianSetup s;
    const auto a = ccn::sample_anchors(s, 10000, 0.1, 4.0, 8);
    double sum = 0, lo = 1, hi = 0;
    std::vector<double> offsets;
    for (Eigen::Index i = 0; i < a.k(); ++i) {
        const double eta = s.posterior(a.point(i));
        sum += eta;
        lo = std::min(lo, eta);
        hi = std::max(hi, eta);
        offsets.push_back(eta - 0.5);
    }
    EXPECT_NEAR(sum / 10000.0, 0.5, 0.002);
    EXPECT_GE(lo, 0.4 - 1e-12);
    EXPECT_LE(hi, 0.6 + 1e-12);
    // Second moment of U(-0.1, 0.1) is 0.01 / 3.
    double m2 = 0;
    for (double o : offsets) m2 += o * o;
    EXPECT_NEAR(m2 / 10000.0 / (0.01 / 3.0), 1.0, 0.05);
}

TEST(SampleAnchors, Validation) {
    const GaussianSetup s;
    EXPECT_THROW(ccn::sample_anchors(s, 0, 0.0, 4.0, 1), ccn::AnchorError);
    EXPECT_THROW(ccn::sample_anchors(s, 1, 0.5, 4.0, 1), ccn::ParameterError);
    EXPECT_THROW(ccn::sample_anchors(s, 1, 0.1, 0.0, 1), ccn::ParameterError);
}

}  // namespace
