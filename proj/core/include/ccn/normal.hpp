#pragma once

namespace ccn {

/// Standard normal CDF, Phi(x) = erfc(-x / sqrt(2)) / 2.
double normal_cdf(double x);

/// Upper tail 1 - Phi(x), computed without cancellation.
double normal_sf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Inverse of normal_cdf. Throws ParameterError unless 0 < p < 1.
double normal_quantile(double p);

/// P(lower <= Z <= upper) for Z ~ N(0,1), evaluated on whichever tail keeps
/// the most significant digits.
double normal_interval(double lower, double upper);

/// Two-sided p-value 2 * (1 - Phi(|z|)).
double two_sided_p_value(double z);

}  // namespace ccn
