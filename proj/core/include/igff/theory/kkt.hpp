#pragma once

#include <span>
#include <vector>

#include "igff/theory/profile.hpp"
#include "igff/theory/step_variance.hpp"

namespace igff::theory {

/// First-moment optimisation problems behind the optimal paths.
///
/// Increments x_i of the path over the steps (lambda_{i-1}, lambda_i] are
/// constrained by the running entropy budget
///   g_k(x) = sum_{i<=k} (dl_i - x_i^2 / (sigma_i^2 dl_i)) >= 0.

/// g_1..g_K for the first K = x.size() steps.
std::vector<double> budget_constraints(const StepVariance& params, std::span<const double> x);

/// sum_i x_i over all M steps.
double max_objective(std::span<const double> x);

/// f_gamma(x_1..x_{M-1}): entropy of a path that ends at gamma.
double highpoints_objective(const StepVariance& params, double gamma, std::span<const double> x);

/// Closed-form maximiser x_i = J_{sigma^2/sigma_bar}(lambda_i) - J_{sigma^2/sigma_bar}(lambda_{i-1}).
std::vector<double> kkt_max_solution(const TheoryProfile& profile);
std::vector<double> kkt_max_solution(const StepVariance& params);

/// Closed-form maximiser of f_gamma, M-1 free increments.
/// Throws InvalidArgument for gamma outside [0, gamma*).
std::vector<double> kkt_highpoints_solution(double gamma, const TheoryProfile& profile);
std::vector<double> kkt_highpoints_solution(double gamma, const StepVariance& params);

}  // namespace igff::theory
