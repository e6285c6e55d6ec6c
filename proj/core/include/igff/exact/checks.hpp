#pragma once

#include <cstdint>
#include <vector>

#include "igff/exact/functional.hpp"
#include "igff/field/geometry.hpp"
#include "igff/field/harmonic_cache.hpp"
#include "igff/theory/step_variance.hpp"

namespace igff::exact {

/// G_{[v]_lambda}(v, v); zero when v sits on the boundary of its neighbourhood.
double neighborhood_green(const field::HarmonicCache& cache, Site v, double lambda);

/// sigma_i^2 (G_{[v]_lo}(v,v) - G_{[v]_hi}(v,v)) for lo < hi inside step i.
double increment_variance(const field::HarmonicCache& cache, const theory::StepVariance& params, Site v, double lo,
                          double hi);

/// V_N^delta = {v : dist(v, boundary) >= delta N}, as [margin, N - margin] per axis.
int bulk_margin(GridSize grid, double delta);

/// Coordinates 0..N sampled with roughly `points` values including both ends
/// and the centre.
std::vector<int> axis_sample(int lo, int hi, int points, int centre);

struct VarianceSample {
    Site site;
    std::size_t step;  // 1-based sigma step
    double lo, hi;
    double variance;
    double deviation;  // variance - (hi - lo) sigma_step^2 log N
    bool bulk;         // site in V_N^delta
};

struct VarianceReport {
    int n = 0;
    double delta = 0.0;
    std::vector<VarianceSample> samples;
    double bulk_min = 0.0;
    double bulk_max = 0.0;
    double all_max = 0.0;  // over all sampled sites, boundary-adjacent included
    double center_deviation = 0.0;
    double center_ratio = 0.0;  // Var(psi_c) / (J_{sigma^2}(1) log N)

    double max_abs_deviation() const;
};

struct VarianceOptions {
    int axis_points = 17;
};

/// Deviations D(v) of full-step increment variances over a strided sample of
/// V_N (bulk and boundary-adjacent sites).
VarianceReport check_variance_bounds(GridSize grid, const theory::StepVariance& params, double delta,
                                     const VarianceOptions& options = {});
VarianceReport check_variance_bounds(const field::HarmonicCache& cache, const theory::StepVariance& params,
                                     double delta, const VarianceOptions& options = {});

/// Largest |Var_exact - Var_green_difference| over sites and all pairs of grid
/// scales inside each sigma step.
double green_difference_identity_error(const CovarianceEngine& engine, const field::HarmonicCache& cache,
                                       const theory::StepVariance& params, const std::vector<Site>& sites);

struct RepresentativeSample {
    Site site;
    Site representative;
    double variance;
};

struct RepresentativeReport {
    int n = 0;
    double lambda = 0.0;
    std::vector<RepresentativeSample> samples;
    double max_variance = 0.0;
};

/// Corner-adjacent sites, edge midpoints, the centre and `random_sites`
/// seeded uniform sites.
std::vector<Site> representative_sites(GridSize grid, int random_sites = 8, std::uint64_t seed = 0x5eed);

RepresentativeReport check_representative_bound(GridSize grid, const theory::StepVariance& params, double lambda);
RepresentativeReport check_representative_bound(const CovarianceEngine& engine, const field::HarmonicCache& cache,
                                                const theory::StepVariance& params, double lambda,
                                                const std::vector<Site>& sites);

struct IndependenceTuple {
    Site v, w;
    double rho;
    double lambda, lambda2;  // increment of psi_v
    double mu, mu2;          // increment of psi_w
    bool after_branching;    // lambda, mu > rho (otherwise lambda > rho > mu2)
    bool shells_disjoint;    // supports avoid the opposite interior
    double covariance;
};

struct IndependenceReport {
    int n = 0;
    std::vector<IndependenceTuple> tuples;
    double max_abs_covariance = 0.0;
    double max_abs_after_branching = 0.0;
    double max_abs_straddling = 0.0;
    double max_abs_disjoint_shells = 0.0;  // tuples with shells_disjoint only
    std::size_t straddling = 0;
    std::size_t disjoint_shells = 0;
};

/// Random tuples satisfying lambda, mu > rho(v, w) or lambda > rho > mu2, with
/// the exact covariance of the two psi increments.
IndependenceReport check_independence(GridSize grid, const theory::StepVariance& params, int count,
                                      std::uint64_t seed);

struct SmoothnessSample {
    int half_width;
    Site u, v;
    bool at_boundary;  // the box shares an edge with the boundary of V_N
    double variance;   // Var(phi_u(B) - phi_v(B))
};

/// Var of the difference of harmonic averages over the boundary of a box B of
/// half-width L around u, seen from u and from v = u + (L/2, L/2).
std::vector<SmoothnessSample> check_box_smoothness(GridSize grid, const std::vector<int>& half_widths);

}  // namespace igff::exact
