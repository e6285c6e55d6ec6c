#include "igff/experiments/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "igff/error.hpp"
#include "igff/exact/checks.hpp"
#include "igff/exact/gaussian.hpp"

namespace igff::experiments {

namespace {

constexpr std::size_t kMinReplicates = 5;

PerN summarize(int n, const std::vector<double>& xs) {
    PerN p;
    p.n = n;
    p.replicates = xs.size();
    double sum = 0.0;
    for (const double x : xs) sum += x;
    p.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (const double x : xs) ss += (x - p.mean) * (x - p.mean);
        p.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
    } else {
        p.std_error = std::numeric_limits<double>::quiet_NaN();
    }
    return p;
}

std::map<int, std::vector<const RunRecord*>> by_n(const std::vector<RunRecord>& records) {
    std::map<int, std::vector<const RunRecord*>> out;
    for (const auto& r : records) out[r.n].push_back(&r);
    return out;
}

TrendFit fit_points(const std::vector<PerN>& points) {
    std::vector<int> ns;
    std::vector<double> means;
    std::vector<double> ses;
    for (const auto& p : points) {
        if (p.excluded) continue;
        ns.push_back(p.n);
        means.push_back(p.mean);
        ses.push_back(p.std_error);
    }
    return fit_inverse_log(ns, means, ses);
}

}  // namespace

TrendFit fit_inverse_log(const std::vector<int>& ns, const std::vector<double>& means,
                         const std::vector<double>& std_errors) {
    if (ns.size() != means.size() || ns.size() != std_errors.size()) throw InvalidArgument("fit inputs differ in length");
    TrendFit fit;
    fit.points = ns.size();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (ns.size() < 2) {
        fit.slope = nan;
        fit.intercept = ns.empty() ? nan : means.front();
        fit.intercept_se = nan;
        return fit;
    }
    std::vector<double> x(ns.size());
    for (std::size_t k = 0; k < ns.size(); ++k) x[k] = 1.0 / std::log(static_cast<double>(ns[k]));
    const double k_count = static_cast<double>(ns.size());
    double xbar = 0.0;
    double ybar = 0.0;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        xbar += x[k] / k_count;
        ybar += means[k] / k_count;
    }
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        sxx += (x[k] - xbar) * (x[k] - xbar);
        sxy += (x[k] - xbar) * (means[k] - ybar);
    }
    if (sxx == 0.0) throw InvalidArgument("fit needs at least two distinct N");
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    // intercept = sum_k c_k y_k with c_k = 1/K - xbar (x_k - xbar) / Sxx
    double var = 0.0;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const double c = 1.0 / k_count - xbar * (x[k] - xbar) / sxx;
        var += c * c * std_errors[k] * std_errors[k];
    }
    fit.intercept_se = std::sqrt(var);
    return fit;
}

FirstOrderSummary estimate_first_order(const std::vector<RunRecord>& records, const theory::TheoryProfile& theory) {
    const auto groups = by_n(records);
    if (groups.size() < 2) throw InvalidArgument("first-order estimate needs at least two distinct N");
    FirstOrderSummary s;
    s.gamma_star = theory.gamma_star();
    for (const auto& [n, rs] : groups) {
        std::vector<double> xs;
        for (const auto* r : rs) xs.push_back(r->max_over_log_n2());
        s.points.push_back(summarize(n, xs));
        if (rs.size() < kMinReplicates) {
            s.warnings.push_back("N=" + std::to_string(n) + ": fewer than 5 replicates");
        }
    }
    s.increasing = true;
    for (std::size_t k = 1; k < s.points.size(); ++k) {
        if (!(s.points[k].mean > s.points[k - 1].mean)) s.increasing = false;
    }
    s.fit = fit_points(s.points);
    return s;
}

EntropySummary estimate_entropy(const std::vector<RunRecord>& records, double gamma_frac,
                                const theory::TheoryProfile& theory) {
    EntropySummary s;
    s.gamma_frac = gamma_frac;
    s.gamma_abs = gamma_frac * theory.gamma_star();
    s.entropy = theory.entropy(s.gamma_abs);
    for (const auto& [n, rs] : by_n(records)) {
        std::vector<double> xs;
        bool any_positive = false;
        for (const auto* r : rs) {
            const auto it = std::find_if(r->gamma_fracs.begin(), r->gamma_fracs.end(),
                                         [&](double g) { return std::abs(g - gamma_frac) < 1e-12; });
            if (it == r->gamma_fracs.end()) throw InvalidArgument("level not present in the records");
            const auto count = r->high_counts[static_cast<std::size_t>(it - r->gamma_fracs.begin())];
            any_positive = any_positive || count > 0;
            xs.push_back(std::log1p(static_cast<double>(count)) / r->log_n2());
        }
        PerN p = summarize(n, xs);
        if (!any_positive) {
            p.excluded = true;
            s.warnings.push_back("N=" + std::to_string(n) + ": all counts zero, excluded from the fit");
        }
        if (rs.size() < kMinReplicates) s.warnings.push_back("N=" + std::to_string(n) + ": fewer than 5 replicates");
        s.points.push_back(p);
    }
    s.fit = fit_points(s.points);
    return s;
}

ExceedanceBand predicted_exceedance(const theory::TheoryProfile& theory, int n, double gamma, double delta) {
    if (!(gamma > 0.0)) throw InvalidArgument("exceedance needs gamma > 0");
    if (gamma >= theory.gamma_star()) throw InvalidArgument("supercritical level");
    const field::GridSize grid(n);
    const field::HarmonicCache cache(grid);
    const auto& params = theory.params();

    const auto psi_sd = [&](lattice::Site v) {
        double var = 0.0;
        for (std::size_t i = 1; i <= params.size(); ++i) {
            var += exact::increment_variance(cache, params, v, params.scale(i - 1), params.scale(i));
        }
        return std::sqrt(var);
    };

    ExceedanceBand band;
    const double z = gamma * grid.log_n2();
    band.sd_center = psi_sd(grid.center());
    const int m = exact::bulk_margin(grid, delta);
    band.sd_bulk_corner = psi_sd({m, m});

    const double interior = static_cast<double>(n - 1) * static_cast<double>(n - 1);
    const double side = static_cast<double>(n - 2 * m + 1);
    band.upper = interior * exact::gaussian_tail_bounds(z, band.sd_center).upper;
    band.lower = side * side * exact::gaussian_tail_bounds(z, band.sd_bulk_corner).lower;
    band.lower = std::min(band.lower, band.upper);
    band.center = band.lower > 0.0 ? std::sqrt(band.lower * band.upper) : band.upper;
    return band;
}

}  // namespace igff::experiments
