#pragma once

#include <string>
#include <vector>

#include "igff/experiments/runner.hpp"
#include "igff/theory/profile.hpp"

namespace igff::experiments {

/// Least squares line y = intercept + slope / log N through per-N means.
/// intercept_se propagates the per-N standard errors through the (linear)
/// estimator; it is NaN when fewer than two points are fitted.
struct TrendFit {
    double slope = 0.0;
    double intercept = 0.0;
    double intercept_se = 0.0;
    std::size_t points = 0;
};

TrendFit fit_inverse_log(const std::vector<int>& ns, const std::vector<double>& means,
                         const std::vector<double>& std_errors);

struct PerN {
    int n = 0;
    std::size_t replicates = 0;
    double mean = 0.0;
    double std_error = 0.0;
    bool excluded = false;  // entropy: every count at this N was zero
};

struct FirstOrderSummary {
    std::vector<PerN> points;
    TrendFit fit;
    double gamma_star = 0.0;
    bool increasing = false;  // strictly increasing means along n_list order
    std::vector<std::string> warnings;
};

/// Mean and standard error of max psi / log N^2 per N (ascending N), trend in
/// 1/log N, extrapolated intercept. Throws InvalidArgument with < 2 distinct N.
FirstOrderSummary estimate_first_order(const std::vector<RunRecord>& records, const theory::TheoryProfile& theory);

struct EntropySummary {
    double gamma_frac = 0.0;
    double gamma_abs = 0.0;
    double entropy = 0.0;  // theory value E_gamma
    std::vector<PerN> points;
    TrendFit fit;
    std::vector<std::string> warnings;
};

/// log(1 + |H_N^gamma|) / log N^2 per N for the level gamma_frac * gamma*.
EntropySummary estimate_entropy(const std::vector<RunRecord>& records, double gamma_frac,
                                const theory::TheoryProfile& theory);

struct ExceedanceBand {
    double lower = 0.0;
    double upper = 0.0;
    double center = 0.0;  // geometric mean of the bounds, or upper when lower = 0
    double sd_center = 0.0;
    double sd_bulk_corner = 0.0;
};

/// Bracket for E|H_N^gamma| (gamma absolute, in units of log N^2) from exact
/// variances and Gaussian tail bounds: the upper count applies the centre
/// variance to every interior site, the lower count applies the variance at
/// the corner of V_N^delta to the sites of V_N^delta.
ExceedanceBand predicted_exceedance(const theory::TheoryProfile& theory, int n, double gamma, double delta = 0.25);

}  // namespace igff::experiments
