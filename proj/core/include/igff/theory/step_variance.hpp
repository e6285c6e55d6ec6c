#pragma once

#include <cstddef>
#include <vector>

#include "igff/theory/step_function.hpp"

namespace igff::theory {

/// Variance parameters sigma_1..sigma_M and scale parameters
/// 0 < lambda_1 < ... < lambda_M = 1, i.e. the step function
/// sigma(s) = sigma_i on (lambda_{i-1}, lambda_i], sigma(0) = sigma_1.
class StepVariance {
public:
    StepVariance(std::vector<double> sigma, std::vector<double> lambda);

    static StepVariance from_sigma_sq(const std::vector<double>& sigma_sq, std::vector<double> lambda);
    static StepVariance homogeneous(double sigma = 1.0) { return StepVariance({sigma}, {1.0}); }

    std::size_t size() const { return sigma_.size(); }
    const std::vector<double>& sigma() const { return sigma_; }
    const std::vector<double>& lambda() const { return lambda_; }
    const std::vector<double>& sigma_sq() const { return sigma_sq_; }

    /// lambda_i for i in 0..M, with lambda_0 = 0.
    double scale(std::size_t i) const { return i == 0 ? 0.0 : lambda_[i - 1]; }
    /// Width of the i-th step, i in 1..M.
    double step_width(std::size_t i) const { return scale(i) - scale(i - 1); }

    double operator()(double s) const { return sigma_fn_(s); }

    const StepFunction& sigma_fn() const { return sigma_fn_; }
    const StepFunction& variance_fn() const { return variance_fn_; }

    friend bool operator==(const StepVariance& a, const StepVariance& b) {
        return a.sigma_ == b.sigma_ && a.lambda_ == b.lambda_;
    }

private:
    StepVariance(std::vector<double> sigma, std::vector<double> sigma_sq, std::vector<double> lambda);

    std::vector<double> sigma_;
    std::vector<double> sigma_sq_;
    std::vector<double> lambda_;
    StepFunction sigma_fn_;
    StepFunction variance_fn_;
};

}  // namespace igff::theory
