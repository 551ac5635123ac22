#pragma once

#include <vector>

#include "ccn/dataset.hpp"

namespace ccn {

struct FitOptions {
    double gradient_tolerance = 1e-8;  // sup-norm of the score
    int max_iterations = 100;
    double separation_norm = 30.0;     // ||theta||_2 above this means separable
    bool ridge_fallback = false;
    double ridge_lambda = 1e-6;        // penalty lambda * ||theta||^2
    int max_step_halvings = 50;
};

/// Result of a logistic-regression maximum-likelihood fit. Immutable.
struct FittedModel {
    Vector theta;
    /// (X^T D X)^{-1} at theta, D_ii = eta_i (1 - eta_i). With the ridge
    /// fallback the penalty curvature 2*lambda*I is included.
    Matrix hessian_inv;
    bool converged = false;
    int iterations = 0;
    double grad_norm = 0.0;
    double ridge_used = 0.0;
    double log_likelihood = 0.0;
    /// Objective after each accepted step, starting with the initial value.
    std::vector<double> objective_trace;

    Eigen::Index dim() const noexcept { return theta.size(); }
};

double sigmoid(double t) noexcept;
double logit(double p);

/// Bernoulli log-likelihood sum_i [(y_i+1)/2 log eta_i + (1-y_i)/2 log(1-eta_i)].
double log_likelihood(const Dataset& data, const Vector& theta);

/// Score vector X^T ((y+1)/2 - eta).
Vector score(const Dataset& data, const Vector& theta);

/// Damped Newton-Raphson (IRLS) with step halving.
///
/// Throws SeparabilityError when ||theta|| exceeds options.separation_norm
/// and the ridge fallback is off; in that case, with the fallback on, the fit
/// restarts with the ridge penalty and records ridge_used. Throws
/// NumericalError when X^T D X is not positive definite.
FittedModel fit(const Dataset& data, const FitOptions& options = {});

/// sigma(theta^T x); x must include the intercept entry.
double predict_posterior(const FittedModel& model, const Vector& x);

/// Quadratic form x^T H^{-1} x with the fitted inverse Hessian.
double quadratic_form(const FittedModel& model, const Vector& x);

/// Delta-method variance of the predicted posterior: [eta(1-eta)]^2 x^T H^{-1} x.
/// hessian_inv already carries the 1/n scale. Throws DomainError for eta in {0,1}.
double delta_variance(const FittedModel& model, const Vector& x, double eta);

}  // namespace ccn
