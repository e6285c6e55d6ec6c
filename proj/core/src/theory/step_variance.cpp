#include "igff/theory/step_variance.hpp"

#include <cmath>

#include "igff/error.hpp"

namespace igff::theory {

namespace {

std::vector<double> squared(const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const double x : v) out.push_back(x * x);
    return out;
}

}  // namespace

StepVariance::StepVariance(std::vector<double> sigma, std::vector<double> lambda)
    : StepVariance(sigma, squared(sigma), std::move(lambda)) {}

StepVariance::StepVariance(std::vector<double> sigma, std::vector<double> sigma_sq, std::vector<double> lambda)
    : sigma_(std::move(sigma)), sigma_sq_(std::move(sigma_sq)), lambda_(std::move(lambda)) {
    if (sigma_.empty()) throw InvalidArgument("need at least one variance parameter");
    if (sigma_.size() != lambda_.size()) throw InvalidArgument("sigma and lambda must have the same length");
    for (const double s : sigma_) {
        if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("variance parameters must be positive");
    }
    double prev = 0.0;
    for (const double l : lambda_) {
        if (!(l > prev)) throw InvalidArgument("scale parameters must be strictly increasing in (0, 1]");
        prev = l;
    }
    if (lambda_.back() != 1.0) throw InvalidArgument("last scale parameter must be exactly 1");
    sigma_fn_ = StepFunction(lambda_, sigma_);
    variance_fn_ = StepFunction(lambda_, sigma_sq_);
}

StepVariance StepVariance::from_sigma_sq(const std::vector<double>& sigma_sq, std::vector<double> lambda) {
    std::vector<double> sigma;
    sigma.reserve(sigma_sq.size());
    for (const double v : sigma_sq) {
        if (!(v > 0.0)) throw InvalidArgument("variance parameters must be positive");
        sigma.push_back(std::sqrt(v));
    }
    return StepVariance(std::move(sigma), sigma_sq, std::move(lambda));
}

}  // namespace igff::theory
