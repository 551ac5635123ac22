#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ccn {

enum class NoiseKind { Uniform, ClassConditional };

/// Instance-independent label flipping process.
///
/// Uniform(tau): both classes flip with probability tau, 0 <= tau < 1/2.
/// ClassConditional(alpha, beta): a true +1 becomes -1 with probability alpha,
/// a true -1 becomes +1 with probability beta; alpha, beta >= 0, alpha + beta < 1.
class NoiseSpec {
public:
    static NoiseSpec uniform(double tau);
    static NoiseSpec class_conditional(double alpha, double beta);
    static NoiseSpec none() { return class_conditional(0.0, 0.0); }

    NoiseKind kind() const noexcept { return kind_; }
    double tau() const noexcept { return alpha_; }
    /// P(noisy = -1 | clean = +1).
    double alpha() const noexcept { return alpha_; }
    /// P(noisy = +1 | clean = -1).
    double beta() const noexcept { return beta_; }

    friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;

private:
    NoiseSpec(NoiseKind kind, double alpha, double beta) : kind_(kind), alpha_(alpha), beta_(beta) {}

    NoiseKind kind_;
    double alpha_;
    double beta_;
};

/// P(noisy y = +1 | x) given the clean posterior eta: (1 - alpha - beta) eta + beta.
double noisy_posterior(double eta, const NoiseSpec& spec);

/// Positive-class prior after corruption; same affine map as the posterior.
double noisy_prior(double pi, const NoiseSpec& spec);

/// Flips each label independently. Label i uses the i-th value of a
/// counter-based stream keyed by `seed`, so the result does not depend on
/// how the work is partitioned.
std::vector<int> corrupt_labels(std::span<const int> labels, const NoiseSpec& spec, std::uint64_t seed);

/// True iff sign(noisy_posterior(eta, UN(tau)) - 1/2) == sign(eta - 1/2),
/// with sign(0) = 0.
bool un_sign_preserved(double eta, double tau);

}  // namespace ccn
