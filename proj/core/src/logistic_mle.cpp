#include "ccn/logistic_mle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccn/errors.hpp"

namespace ccn {

namespace {

// Relative rounding level of a log-likelihood summed over many rows.
constexpr double kFlatTolerance = 1e-12;

// log(1 + exp(t)) without overflow.
double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

// Strictly positive margin y_i theta^T x_i on every row: a separating hyperplane.
bool perfectly_classified(const Dataset& data, const Vector& theta) {
    const Vector margin = data.features() * theta;
    for (Eigen::Index i = 0; i < margin.size(); ++i) {
        if (data.labels()[static_cast<std::size_t>(i)] * margin(i) <= 0.0) return false;
    }
    return true;
}

struct Objective {
    const Dataset& data;
    double lambda;

    double value(const Vector& theta) const {
        return log_likelihood(data, theta) - lambda * theta.squaredNorm();
    }

    Vector gradient(const Vector& theta) const {
        return score(data, theta) - 2.0 * lambda * theta;
    }

    // X^T D X + 2 lambda I, the negative Hessian of value().
    Matrix information(const Vector& theta) const {
        const Matrix& x = data.features();
        const Vector eta = (x * theta).unaryExpr([](double t) { return sigmoid(t); });
        const Vector w = eta.array() * (1.0 - eta.array());
        Matrix info = x.transpose() * w.asDiagonal() * x;
        info.diagonal().array() += 2.0 * lambda;
        return info;
    }
};

FittedModel run_newton(const Dataset& data, const FitOptions& options, double lambda) {
    const Objective obj{data, lambda};
    FittedModel model;
    model.ridge_used = lambda;
    Vector theta = Vector::Zero(data.dim());
    double current = obj.value(theta);
    model.objective_trace.push_back(current);
    Vector grad = obj.gradient(theta);

    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        if (grad.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) break;
        const Eigen::LLT<Matrix> llt(obj.information(theta));
        if (llt.info() != Eigen::Success) {
            throw NumericalError("X^T D X is not positive definite");
        }
        const Vector step = llt.solve(grad);

        // Near the optimum the objective gain drops below its own rounding
        // error; a full step that keeps the objective flat to that level and
        // shrinks the score is then taken on the score alone.
        const double flat = kFlatTolerance * std::max(1.0, std::fabs(current));
        Vector candidate = theta + step;
        double next = obj.value(candidate);
        Vector next_grad = obj.gradient(candidate);
        bool accept = next >= current || (next >= current - flat &&
                                          next_grad.lpNorm<Eigen::Infinity>() < grad.lpNorm<Eigen::Infinity>());
        double scale = 1.0;
        for (int halvings = 0; !accept && halvings < options.max_step_halvings; ++halvings) {
            scale *= 0.5;
            candidate = theta + scale * step;
            next = obj.value(candidate);
            accept = next >= current;
            if (accept) next_grad = obj.gradient(candidate);
        }
        if (!accept) break;  // no ascent direction left at double precision

        theta = std::move(candidate);
        current = next;
        model.objective_trace.push_back(current);
        grad = std::move(next_grad);

        if (lambda == 0.0 && theta.norm() > options.separation_norm) {
            throw SeparabilityError("coefficient norm exceeded " + std::to_string(options.separation_norm) +
                                    "; the data look linearly separable");
        }
    }

    if (lambda == 0.0 && perfectly_classified(data, theta)) {
        throw SeparabilityError("every training point is classified correctly; the MLE does not exist");
    }

    const Eigen::LLT<Matrix> llt(obj.information(theta));
    if (llt.info() != Eigen::Success) throw NumericalError("X^T D X is singular at the optimum");
    model.hessian_inv = llt.solve(Matrix::Identity(data.dim(), data.dim()));
    model.hessian_inv = 0.5 * (model.hessian_inv + model.hessian_inv.transpose()).eval();

    model.theta = std::move(theta);
    model.iterations = iter;
    model.grad_norm = grad.lpNorm<Eigen::Infinity>();
    model.converged = model.grad_norm <= options.gradient_tolerance;
    model.log_likelihood = log_likelihood(data, model.theta);
    return model;
}

}  // namespace

double sigmoid(double t) noexcept {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double logit(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("logit requires 0 < p < 1");
    return std::log(p / (1.0 - p));
}

double log_likelihood(const Dataset& data, const Vector& theta) {
    if (theta.size() != data.dim()) throw DimensionError("theta dimension mismatch");
    const Vector margin = data.features() * theta;
    double total = 0.0;
    for (Eigen::Index i = 0; i < margin.size(); ++i) {
        // log sigma(t) = -softplus(-t), log(1 - sigma(t)) = -softplus(t)
        const double t = margin(i);
        total -= data.labels()[static_cast<std::size_t>(i)] == 1 ? softplus(-t) : softplus(t);
    }
    return total;
}

Vector score(const Dataset& data, const Vector& theta) {
    if (theta.size() != data.dim()) throw DimensionError("theta dimension mismatch");
    const Matrix& x = data.features();
    Vector residual(x.rows());
    const Vector margin = x * theta;
    for (Eigen::Index i = 0; i < residual.size(); ++i) {
        const double target = data.labels()[static_cast<std::size_t>(i)] == 1 ? 1.0 : 0.0;
        residual(i) = target - sigmoid(margin(i));
    }
    return x.transpose() * residual;
}

FittedModel fit(const Dataset& data, const FitOptions& options) {
    try {
        return run_newton(data, options, 0.0);
    } catch (const SeparabilityError&) {
        if (!options.ridge_fallback) throw;
    }
    return run_newton(data, options, options.ridge_lambda);
}

double predict_posterior(const FittedModel& model, const Vector& x) {
    if (x.size() != model.dim()) {
        throw DimensionError("feature vector has " + std::to_string(x.size()) + " entries, model expects " +
                             std::to_string(model.dim()));
    }
    return sigmoid(model.theta.dot(x));
}

double quadratic_form(const FittedModel& model, const Vector& x) {
    if (x.size() != model.dim()) throw DimensionError("feature vector dimension mismatch");
    return x.dot(model.hessian_inv * x);
}

double delta_variance(const FittedModel& model, const Vector& x, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) {
        throw DomainError("delta-method variance is undefined for eta in {0, 1}");
    }
    const double g = eta * (1.0 - eta);
    return std::max(0.0, g * g * quadratic_form(model, x));
}

}  // namespace ccn
