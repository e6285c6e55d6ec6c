#include "igff/theory/step_function.hpp"

#include <algorithm>

#include "igff/error.hpp"

namespace igff::theory {

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
    if (breaks_.empty() || breaks_.size() != values_.size()) {
        throw InvalidArgument("step function needs one value per break");
    }
    double prev = 0.0;
    for (const double b : breaks_) {
        if (!(b > prev)) throw InvalidArgument("step function breaks must be strictly increasing in (0, 1]");
        prev = b;
    }
    if (breaks_.back() != 1.0) throw InvalidArgument("last break must be exactly 1");
}

double StepFunction::operator()(double s) const {
    if (s <= 0.0) return values_.front();
    const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), s);
    if (it == breaks_.end()) return values_.back();
    return values_[static_cast<std::size_t>(it - breaks_.begin())];
}

double StepFunction::integral(double s1, double s2) const {
    if (s1 > s2) throw InvalidArgument("integral bounds reversed");
    if (s1 < 0.0 || s2 > 1.0) throw InvalidArgument("integral bounds outside [0, 1]");
    double acc = 0.0;
    for (std::size_t k = 0; k < breaks_.size(); ++k) {
        const double lo = std::max(left(k), s1);
        const double hi = std::min(breaks_[k], s2);
        if (hi > lo) acc += values_[k] * (hi - lo);
    }
    return acc;
}

double integral_J(const StepFunction& f, double s1, double s2) { return f.integral(s1, s2); }

}  // namespace igff::theory
