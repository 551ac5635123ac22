#include "ccn/noise_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccn/errors.hpp"
#include "ccn/random.hpp"

namespace ccn {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

// Affine noise map written around the fixed point 1/2 so that
// eta = 1/2 maps to exactly 1/2 whenever alpha == beta.
double affine_noise(double p, const NoiseSpec& spec) {
    const double centred = 0.5 + (1.0 - spec.alpha() - spec.beta()) * (p - 0.5) +
                           0.5 * (spec.beta() - spec.alpha());
    return std::clamp(centred, 0.0, 1.0);
}

int sign_about_half(double p) {
    if (p > 0.5) return 1;
    if (p < 0.5) return -1;
    return 0;
}

}  // namespace

NoiseSpec NoiseSpec::uniform(double tau) {
    if (!(tau >= 0.0 && tau < 0.5)) {
        throw ParameterError("uniform noise requires 0 <= tau < 0.5, got " + std::to_string(tau));
    }
    return NoiseSpec(NoiseKind::Uniform, tau, tau);
}

NoiseSpec NoiseSpec::class_conditional(double alpha, double beta) {
    if (!(alpha >= 0.0 && beta >= 0.0 && alpha + beta < 1.0)) {
        throw ParameterError("class-conditional noise requires alpha, beta >= 0 and alpha + beta < 1");
    }
    return NoiseSpec(NoiseKind::ClassConditional, alpha, beta);
}

double noisy_posterior(double eta, const NoiseSpec& spec) {
    if (!is_probability(eta)) throw DomainError("posterior must lie in [0, 1]");
    return affine_noise(eta, spec);
}

double noisy_prior(double pi, const NoiseSpec& spec) {
    if (!is_probability(pi)) throw DomainError("prior must lie in [0, 1]");
    return affine_noise(pi, spec);
}

std::vector<int> corrupt_labels(std::span<const int> labels, const NoiseSpec& spec, std::uint64_t seed) {
    if (labels.empty()) throw ParameterError("corrupt_labels: empty label sequence");
    std::vector<int> out(labels.begin(), labels.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int y = out[i];
        if (y != 1 && y != -1) throw DomainError("labels must be -1 or +1");
        const double rate = y == 1 ? spec.alpha() : spec.beta();
        if (counter_uniform(seed, i) < rate) out[i] = -y;
    }
    return out;
}

bool un_sign_preserved(double eta, double tau) {
    const NoiseSpec spec = NoiseSpec::uniform(tau);
    return sign_about_half(noisy_posterior(eta, spec)) == sign_about_half(eta);
}

}  // namespace ccn
