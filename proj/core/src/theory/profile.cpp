#include "igff/theory/profile.hpp"

#include <algorithm>
#include <cmath>

#include "igff/error.hpp"

namespace igff::theory {

namespace {

struct Point {
    double x;
    double y;
};

// Positive for a left turn o -> a -> b.
double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool turns_left_or_straight(const Point& o, const Point& a, const Point& b) {
    const double c = cross(o, a, b);
    const double scale = std::hypot(a.x - o.x, a.y - o.y) * std::hypot(b.x - o.x, b.y - o.y);
    return c >= -1e-12 * scale;
}

}  // namespace

std::vector<double> EffectiveVariance::sigma_bar_sq() const {
    std::vector<double> out;
    out.reserve(sigma_bar.size());
    for (const double s : sigma_bar) out.push_back(s * s);
    return out;
}

StepFunction EffectiveVariance::sigma_bar_fn() const {
    return StepFunction(std::vector<double>(jumps.begin() + 1, jumps.end()), sigma_bar);
}

StepFunction EffectiveVariance::sigma_bar_sq_fn() const {
    return StepFunction(std::vector<double>(jumps.begin() + 1, jumps.end()), sigma_bar_sq());
}

EffectiveVariance concavify(const StepVariance& params) {
    const StepFunction& var = params.variance_fn();
    std::vector<Point> hull{{0.0, 0.0}};
    for (const double l : params.lambda()) {
        const Point p{l, var.integral(0.0, l)};
        while (hull.size() >= 2 && turns_left_or_straight(hull[hull.size() - 2], hull.back(), p)) {
            hull.pop_back();
        }
        hull.push_back(p);
    }

    EffectiveVariance eff;
    eff.jumps.reserve(hull.size());
    for (const Point& p : hull) eff.jumps.push_back(p.x);
    for (std::size_t l = 1; l < hull.size(); ++l) {
        const double slope = (hull[l].y - hull[l - 1].y) / (hull[l].x - hull[l - 1].x);
        eff.sigma_bar.push_back(std::sqrt(slope));
    }
    // The last vertex is (1, J(1)) by construction; keep the endpoint exact.
    eff.jumps.back() = 1.0;
    return eff;
}

OptimalPath::OptimalPath(StepFunction drift, StepFunction variance, double split, double level)
    : drift_(std::move(drift)), variance_(std::move(variance)), split_(split), level_(level) {
    base_ = drift_.integral(0.0, split_);
    tail_mass_ = variance_.integral(split_, 1.0);
}

double OptimalPath::operator()(double s) const {
    if (s < 0.0 || s > 1.0) throw InvalidArgument("path argument outside [0, 1]");
    if (s <= split_ || tail_mass_ <= 0.0) return drift_.integral(0.0, s);
    return base_ + variance_.integral(split_, s) / tail_mass_ * (level_ - base_);
}

std::vector<double> OptimalPath::knots() const {
    std::vector<double> k{0.0};
    for (const double b : variance_.breaks()) k.push_back(b);
    for (const double b : drift_.breaks()) k.push_back(b);
    k.push_back(split_);
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    return k;
}

TheoryProfile::TheoryProfile(StepVariance params) : params_(std::move(params)), effective_(concavify(params_)) {
    const StepFunction sigma_bar = effective_.sigma_bar_fn();
    drift_ = combine(params_.variance_fn(), sigma_bar, [](double v, double sb) { return v / sb; });
    gamma_star_ = drift_.integral(0.0, 1.0);
    gamma_star_hull_ = sigma_bar.integral(0.0, 1.0);
    if (std::abs(gamma_star_ - gamma_star_hull_) > 1e-10 * std::max(1.0, gamma_star_)) {
        throw NumericalError("the two expressions of gamma* disagree");
    }

    const StepFunction& var = params_.variance_fn();
    critical_levels_.push_back(0.0);
    for (std::size_t l = 1; l < effective_.jumps.size(); ++l) {
        const double jump = effective_.jumps[l];
        critical_levels_.push_back(drift_.integral(0.0, jump) + var.integral(jump, 1.0) / effective_.sigma_bar[l - 1]);
    }
}

std::size_t TheoryProfile::branch(double gamma) const {
    const std::size_t m = effective_.segments();
    for (std::size_t l = 1; l <= m; ++l) {
        if (gamma < critical_levels_[l]) return l;
    }
    return m;
}

double TheoryProfile::entropy(double gamma) const {
    if (gamma < 0.0) throw InvalidArgument("level must be nonnegative");
    if (gamma >= gamma_star_) throw InvalidArgument("supercritical level");
    const double start = effective_.jumps[branch(gamma) - 1];
    const double dev = gamma - drift_.integral(0.0, start);
    return (1.0 - start) - dev * dev / params_.variance_fn().integral(start, 1.0);
}

double TheoryProfile::level_profile(double lambda) const {
    const double sb = effective_.sigma_bar_fn()(lambda);
    return drift_.integral(0.0, lambda) + params_.variance_fn().integral(lambda, 1.0) / sb;
}

double TheoryProfile::lambda_star(double gamma) const {
    if (gamma <= level_profile(0.0)) return 0.0;
    const StepFunction sigma_bar = effective_.sigma_bar_fn();
    const StepFunction& var = params_.variance_fn();
    // On each step (a, b] of sigma the hull value is constant, so the profile
    // is affine there; locate the first crossing exactly.
    for (std::size_t i = 1; i <= params_.size(); ++i) {
        const double a = params_.scale(i - 1);
        const double b = params_.scale(i);
        const double sb = sigma_bar(b);
        const double value_right_of_a = drift_.integral(0.0, a) + var.integral(a, 1.0) / sb;
        const double slope = drift_(b) - var(b) / sb;
        const double value_at_b = value_right_of_a + slope * (b - a);
        if (value_at_b < gamma) continue;
        if (value_right_of_a >= gamma || slope <= 0.0) return a;
        return a + (gamma - value_right_of_a) / slope;
    }
    return 1.0;
}

double TheoryProfile::thick_point_dimension(double gamma) const {
    if (gamma < 0.0) throw InvalidArgument("level must be nonnegative");
    if (gamma >= gamma_star_) throw InvalidArgument("supercritical level");
    const double ls = lambda_star(gamma);
    const double dev = gamma - drift_.integral(0.0, ls);
    return 2.0 * ((1.0 - ls) - dev * dev / params_.variance_fn().integral(ls, 1.0));
}

OptimalPath TheoryProfile::max_path() const { return OptimalPath(drift_, params_.variance_fn(), 1.0, gamma_star_); }

OptimalPath TheoryProfile::high_points_path(double gamma) const {
    if (gamma < 0.0 || gamma > gamma_star_) throw InvalidArgument("level outside [0, gamma*]");
    const double start = effective_.jumps[branch(gamma) - 1];
    return OptimalPath(drift_, params_.variance_fn(), start, gamma);
}

}  // namespace igff::theory
