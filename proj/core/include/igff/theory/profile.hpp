#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "igff/theory/step_function.hpp"
#include "igff/theory/step_variance.hpp"

namespace igff::theory {

/// The non-increasing step function sigma_bar whose variance integral is the
/// concave hull of s -> J_{sigma^2}(s).
struct EffectiveVariance {
    /// lambda^0 = 0 < lambda^1 < ... < lambda^m = 1.
    std::vector<double> jumps;
    /// sigma_bar_l for l = 1..m (stored 0-based), non-increasing.
    std::vector<double> sigma_bar;

    std::size_t segments() const { return sigma_bar.size(); }
    std::vector<double> sigma_bar_sq() const;
    StepFunction sigma_bar_fn() const;
    StepFunction sigma_bar_sq_fn() const;
};

/// Upper concave hull of (0,0), (lambda_i, J_{sigma^2}(lambda_i)).
/// Collinear hull vertices are merged, so segment slopes strictly decrease.
EffectiveVariance concavify(const StepVariance& params);

/// s -> L(s) / log N^2 for one of the optimal paths.
class OptimalPath {
public:
    /// For s <= split the path follows J_{sigma^2/sigma_bar}; afterwards it
    /// grows proportionally to J_{sigma^2} until it reaches `level` at s = 1.
    OptimalPath(StepFunction drift, StepFunction variance, double split, double level);

    double operator()(double s) const;
    double split() const { return split_; }
    double level() const { return level_; }
    /// Exact knots (0, the step breaks, 1) of the piecewise-linear path.
    std::vector<double> knots() const;

private:
    StepFunction drift_;
    StepFunction variance_;
    double split_;
    double level_;
    double base_;
    double tail_mass_;
};

/// All closed-form predictions for one parameter set. Values are "N-free":
/// levels and paths are in units of log N^2.
class TheoryProfile {
public:
    explicit TheoryProfile(StepVariance params);

    const StepVariance& params() const { return params_; }
    const EffectiveVariance& effective() const { return effective_; }

    /// sigma^2 / sigma_bar as a step function on the scale parameters.
    const StepFunction& drift() const { return drift_; }

    /// gamma* = J_{sigma^2/sigma_bar}(1); gamma_star_hull() is int_0^1 sigma_bar.
    double gamma_star() const { return gamma_star_; }
    double gamma_star_hull() const { return gamma_star_hull_; }

    /// gamma^0 = 0 < gamma^1 < ... < gamma^m = gamma*.
    const std::vector<double>& critical_levels() const { return critical_levels_; }

    /// l in 1..m with gamma^{l-1} <= gamma < gamma^l. gamma = gamma* maps to m.
    std::size_t branch(double gamma) const;

    /// Limit of log|H_N^gamma| / log N^2 for 0 <= gamma < gamma*.
    double entropy(double gamma) const;

    /// lambda_star = inf{lambda : gamma <= int_0^1 sigma^2(s) / sigma_bar(s ^ lambda) ds}.
    double lambda_star(double gamma) const;
    /// int_0^1 sigma^2(s) / sigma_bar(s ^ lambda) ds.
    double level_profile(double lambda) const;
    /// Conjectured Hausdorff dimension of gamma-thick points (continuum analogue).
    double thick_point_dimension(double gamma) const;

    OptimalPath max_path() const;
    /// Optimal path for gamma-high points, 0 <= gamma <= gamma*.
    OptimalPath high_points_path(double gamma) const;

private:
    StepVariance params_;
    EffectiveVariance effective_;
    StepFunction drift_;
    double gamma_star_;
    double gamma_star_hull_;
    std::vector<double> critical_levels_;
};

}  // namespace igff::theory
