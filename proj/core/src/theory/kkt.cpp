#include "igff/theory/kkt.hpp"

#include "igff/error.hpp"

namespace igff::theory {

std::vector<double> budget_constraints(const StepVariance& params, std::span<const double> x) {
    if (x.size() > params.size()) throw InvalidArgument("more increments than steps");
    std::vector<double> g;
    g.reserve(x.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dl = params.step_width(i + 1);
        acc += dl - x[i] * x[i] / (params.sigma_sq()[i] * dl);
        g.push_back(acc);
    }
    return g;
}

double max_objective(std::span<const double> x) {
    double acc = 0.0;
    for (const double v : x) acc += v;
    return acc;
}

double highpoints_objective(const StepVariance& params, double gamma, std::span<const double> x) {
    const std::size_t m = params.size();
    if (x.size() + 1 != m) throw InvalidArgument("expected M-1 increments");
    double value = 0.0;
    double used = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double dl = params.step_width(i + 1);
        value += dl - x[i] * x[i] / (params.sigma_sq()[i] * dl);
        used += x[i];
    }
    const double dl = params.step_width(m);
    const double last = gamma - used;
    return value + dl - last * last / (params.sigma_sq()[m - 1] * dl);
}

std::vector<double> kkt_max_solution(const TheoryProfile& profile) {
    const StepVariance& params = profile.params();
    std::vector<double> x;
    x.reserve(params.size());
    for (std::size_t i = 1; i <= params.size(); ++i) {
        x.push_back(profile.drift().integral(params.scale(i - 1), params.scale(i)));
    }
    return x;
}

std::vector<double> kkt_max_solution(const StepVariance& params) { return kkt_max_solution(TheoryProfile(params)); }

std::vector<double> kkt_highpoints_solution(double gamma, const TheoryProfile& profile) {
    if (gamma < 0.0) throw InvalidArgument("level must be nonnegative");
    if (gamma >= profile.gamma_star()) throw InvalidArgument("supercritical level");
    const StepVariance& params = profile.params();
    const StepFunction& var = params.variance_fn();
    const double start = profile.effective().jumps[profile.branch(gamma) - 1];
    const double excess = gamma - profile.drift().integral(0.0, start);
    const double tail = var.integral(start, 1.0);

    std::vector<double> x;
    x.reserve(params.size() - 1);
    for (std::size_t i = 1; i < params.size(); ++i) {
        const double lo = params.scale(i - 1);
        const double hi = params.scale(i);
        if (hi <= start) {
            x.push_back(profile.drift().integral(lo, hi));
        } else {
            x.push_back(var.integral(lo, hi) / tail * excess);
        }
    }
    return x;
}

std::vector<double> kkt_highpoints_solution(double gamma, const StepVariance& params) {
    return kkt_highpoints_solution(gamma, TheoryProfile(params));
}

}  // namespace igff::theory
