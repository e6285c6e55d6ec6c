#pragma once

#include <span>
#include <vector>

namespace igff::theory {

/// Left-continuous step function on [0, 1].
///
/// Value values[k] on (breaks[k-1], breaks[k]] with breaks[-1] = 0, and
/// values[0] at s = 0. breaks is strictly increasing and ends at exactly 1.
class StepFunction {
public:
    StepFunction() = default;
    StepFunction(std::vector<double> breaks, std::vector<double> values);

    static StepFunction constant(double value) { return StepFunction({1.0}, {value}); }

    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t pieces() const { return values_.size(); }
    double left(std::size_t k) const { return k == 0 ? 0.0 : breaks_[k - 1]; }

    double operator()(double s) const;

    /// Exact integral over [s1, s2]; throws when s1 > s2 or outside [0, 1].
    double integral(double s1, double s2) const;
    double integral(double s) const { return integral(0.0, s); }

    /// Pointwise combination on the union of both break sets.
    template <typename Op>
    friend StepFunction combine(const StepFunction& a, const StepFunction& b, Op op) {
        std::vector<double> breaks;
        std::vector<double> values;
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.breaks_.size() && j < b.breaks_.size()) {
            const double next = a.breaks_[i] < b.breaks_[j] ? a.breaks_[i] : b.breaks_[j];
            breaks.push_back(next);
            values.push_back(op(a.values_[i], b.values_[j]));
            if (a.breaks_[i] == next) ++i;
            if (b.breaks_[j] == next) ++j;
        }
        return StepFunction(std::move(breaks), std::move(values));
    }

private:
    std::vector<double> breaks_;
    std::vector<double> values_;
};

/// J_f(s1, s2) = int_{s1}^{s2} f(r) dr.
double integral_J(const StepFunction& f, double s1, double s2);

}  // namespace igff::theory
