#include "ccn/prior_test.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccn/errors.hpp"
#include "ccn/normal.hpp"

namespace ccn {

namespace {

void validate(std::int64_t n, std::int64_t k_pos, double pi0) {
    if (n < 1) throw ParameterError("prior test needs n >= 1");
    if (k_pos < 0 || k_pos > n) throw ParameterError("positive count must lie in [0, n]");
    if (!(pi0 > 0.0 && pi0 < 1.0)) throw ParameterError("pi0 must lie in (0, 1)");
}

double z_statistic(std::int64_t n, std::int64_t k_pos, double pi0) {
    const double nn = static_cast<double>(n);
    return (static_cast<double>(k_pos) - nn * pi0) / std::sqrt(nn * pi0 * (1.0 - pi0));
}

}  // namespace

double binomial_log_pmf(std::int64_t n, std::int64_t i, double p) {
    if (i < 0 || i > n) return -std::numeric_limits<double>::infinity();
    const double nn = static_cast<double>(n);
    const double ii = static_cast<double>(i);
    const double log_choose = std::lgamma(nn + 1.0) - std::lgamma(ii + 1.0) - std::lgamma(nn - ii + 1.0);
    double log_p = 0.0;
    if (i > 0) log_p += ii * std::log(p);
    if (i < n) log_p += (nn - ii) * std::log1p(-p);
    return log_choose + log_p;
}

PriorTestReport prior_z_test(std::int64_t n, std::int64_t k_pos, double pi0) {
    validate(n, k_pos, pi0);
    if (static_cast<double>(n) * pi0 * (1.0 - pi0) < 10.0) {
        throw ApproximationError("n * pi0 * (1 - pi0) < 10: the normal approximation is unreliable; "
                                 "use the exact binomial test");
    }
    PriorTestReport r;
    r.n = n;
    r.k_pos = k_pos;
    r.pi0 = pi0;
    r.pi_hat = static_cast<double>(k_pos) / static_cast<double>(n);
    r.z = z_statistic(n, k_pos, pi0);
    r.p_value = two_sided_p_value(r.z);
    r.method = PriorTestMethod::ZApprox;
    return r;
}

PriorTestReport prior_exact_test(std::int64_t n, std::int64_t k_pos, double pi0) {
    validate(n, k_pos, pi0);
    PriorTestReport r;
    r.n = n;
    r.k_pos = k_pos;
    r.pi0 = pi0;
    r.pi_hat = static_cast<double>(k_pos) / static_cast<double>(n);
    r.z = z_statistic(n, k_pos, pi0);
    r.method = PriorTestMethod::ExactBinomial;

    // The pmf rises on [0, mode] and falls on [mode, n], so the outcomes no
    // more likely than the observed one form a prefix [0, left] plus a
    // suffix [right, n]. Each is located by bisection and summed outwards
    // until the terms stop contributing.
    const double threshold = binomial_log_pmf(n, k_pos, pi0) + std::log1p(kMinlikeRelTolerance);
    const auto lp = [&](std::int64_t i) { return binomial_log_pmf(n, i, pi0); };
    const std::int64_t mode =
        std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((static_cast<double>(n) + 1.0) * pi0)), 0, n);

    // Largest left <= mode with lp(left) <= threshold, or -1.
    std::int64_t left = -1;
    for (std::int64_t lo = 0, hi = mode; lo <= hi;) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (lp(mid) <= threshold) {
            left = mid;
            lo = mid + 1;
        } else {
            hi = mid - 1;
        }
    }
    // Smallest right > mode with lp(right) <= threshold, or n + 1.
    std::int64_t right = n + 1;
    for (std::int64_t lo = mode + 1, hi = n; lo <= hi;) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (lp(mid) <= threshold) {
            right = mid;
            hi = mid - 1;
        } else {
            lo = mid + 1;
        }
    }

    constexpr double kNegligible = 1e-20;
    double total = 0.0;
    for (std::int64_t i = left; i >= 0; --i) {
        const double term = std::exp(lp(i));
        total += term;
        if (term == 0.0 || term < kNegligible * total) break;
    }
    for (std::int64_t i = right; i <= n; ++i) {
        const double term = std::exp(lp(i));
        total += term;
        if (term == 0.0 || term < kNegligible * total) break;
    }
    r.p_value = std::min(1.0, total);
    return r;
}

}  // namespace ccn
