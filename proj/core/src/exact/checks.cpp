#include "igff/exact/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "igff/error.hpp"
#include "igff/rng.hpp"

namespace igff::exact {

namespace {

constexpr double kScaleTol = 1e-12;

std::size_t step_of(const theory::StepVariance& params, double lo, double hi) {
    for (std::size_t i = 1; i <= params.size(); ++i) {
        if (lo >= params.scale(i - 1) - kScaleTol && hi <= params.scale(i) + kScaleTol) return i;
    }
    throw InvalidArgument("increment does not lie inside one sigma step");
}

LinearFunctional box_average(GridSize grid, const lattice::LatticeBox& box, Site u) {
    LinearFunctional f(grid);
    const lattice::LatticeBox vn = grid.box();
    for (const auto& [z, w] : lattice::harmonic_measure(box, u).weights) f.weights[vn.index(z)] += w;
    return f;
}

bool avoids_interior(const LinearFunctional& f, const lattice::LatticeBox& box) {
    const lattice::LatticeBox vn = f.grid.box();
    return std::none_of(f.weights.begin(), f.weights.end(), [&](const auto& kv) {
        return kv.second != 0.0 && box.is_interior(vn.site(kv.first));
    });
}

}  // namespace

double neighborhood_green(const field::HarmonicCache& cache, Site v, double lambda) {
    const field::Neighborhood nb = field::neighborhood(cache.grid(), v, lambda);
    if (!nb.box.is_interior(v)) return 0.0;
    const auto solver = cache.solver(nb.box.width_x(), nb.box.width_y());
    const Site local = v - nb.box.lo();
    return (*solver)(local, local);
}

double increment_variance(const field::HarmonicCache& cache, const theory::StepVariance& params, Site v, double lo,
                          double hi) {
    if (!(lo < hi)) throw InvalidArgument("increment needs lo < hi");
    const std::size_t i = step_of(params, lo, hi);
    return params.sigma_sq()[i - 1] * (neighborhood_green(cache, v, lo) - neighborhood_green(cache, v, hi));
}

int bulk_margin(GridSize grid, double delta) {
    if (!(delta > 0.0 && delta <= 0.5)) throw InvalidArgument("delta must lie in (0, 1/2]");
    return static_cast<int>(std::ceil(delta * grid.n() - 1e-9));
}

std::vector<int> axis_sample(int lo, int hi, int points, int centre) {
    std::set<int> out;
    if (hi < lo) return {};
    const int p = std::max(points, 2);
    for (int k = 0; k < p; ++k) {
        out.insert(lo + static_cast<int>(std::lround(static_cast<double>(k) * (hi - lo) / (p - 1))));
    }
    if (centre >= lo && centre <= hi) out.insert(centre);
    return {out.begin(), out.end()};
}

double VarianceReport::max_abs_deviation() const { return std::max(std::abs(bulk_min), std::abs(bulk_max)); }

VarianceReport check_variance_bounds(GridSize grid, const theory::StepVariance& params, double delta,
                                     const VarianceOptions& options) {
    return check_variance_bounds(field::HarmonicCache(grid), params, delta, options);
}

VarianceReport check_variance_bounds(const field::HarmonicCache& cache, const theory::StepVariance& params,
                                     double delta, const VarianceOptions& options) {
    const GridSize grid = cache.grid();
    const int n = grid.n();
    const int margin = bulk_margin(grid, delta);
    const double log_n = std::log(static_cast<double>(n));

    std::set<int> coords;
    for (const int c : axis_sample(1, n - 1, options.axis_points, n / 2)) coords.insert(c);
    for (const int c : axis_sample(margin, n - margin, options.axis_points, n / 2)) coords.insert(c);

    VarianceReport report;
    report.n = n;
    report.delta = delta;
    report.bulk_min = std::numeric_limits<double>::infinity();
    report.bulk_max = -std::numeric_limits<double>::infinity();
    report.all_max = -std::numeric_limits<double>::infinity();
    report.center_deviation = -std::numeric_limits<double>::infinity();

    const Site centre = grid.center();
    for (const int y : coords) {
        for (const int x : coords) {
            const Site v{x, y};
            const bool bulk = x >= margin && x <= n - margin && y >= margin && y <= n - margin;
            // G_{[v]_{lambda_i}}(v, v) is shared by neighbouring steps.
            double g_prev = neighborhood_green(cache, v, 0.0);
            for (std::size_t i = 1; i <= params.size(); ++i) {
                const double lo = params.scale(i - 1);
                const double hi = params.scale(i);
                const double g_next = neighborhood_green(cache, v, hi);
                const double var = params.sigma_sq()[i - 1] * (g_prev - g_next);
                const double dev = var - (hi - lo) * params.sigma_sq()[i - 1] * log_n;
                report.samples.push_back({v, i, lo, hi, var, dev, bulk});
                report.all_max = std::max(report.all_max, dev);
                if (bulk) {
                    report.bulk_min = std::min(report.bulk_min, dev);
                    report.bulk_max = std::max(report.bulk_max, dev);
                }
                if (v == centre) report.center_deviation = std::max(report.center_deviation, dev);
                g_prev = g_next;
            }
        }
    }

    double total = 0.0;
    for (const auto& s : report.samples) {
        if (s.site == centre) total += s.variance;
    }
    report.center_ratio = total / (params.variance_fn().integral(0.0, 1.0) * log_n);
    return report;
}

double green_difference_identity_error(const CovarianceEngine& engine, const field::HarmonicCache& cache,
                                       const theory::StepVariance& params, const std::vector<Site>& sites) {
    const field::ScaleGrid grid_scales(cache.grid(), &params);
    double worst = 0.0;
    for (const Site v : sites) {
        for (std::size_t i = 1; i <= params.size(); ++i) {
            std::vector<double> inside;
            for (const double s : grid_scales.scales()) {
                if (s >= params.scale(i - 1) - kScaleTol && s <= params.scale(i) + kScaleTol) inside.push_back(s);
            }
            for (std::size_t a = 0; a < inside.size(); ++a) {
                for (std::size_t b = a + 1; b < inside.size(); ++b) {
                    const double exact =
                        engine.variance(psi_increment_functional(cache, v, inside[a], inside[b], params));
                    const double identity = increment_variance(cache, params, v, inside[a], inside[b]);
                    worst = std::max(worst, std::abs(exact - identity));
                }
            }
        }
    }
    return worst;
}

std::vector<Site> representative_sites(GridSize grid, int random_sites, std::uint64_t seed) {
    const int n = grid.n();
    std::vector<Site> out{{1, 1},     {n - 1, 1}, {1, n - 1}, {n - 1, n - 1},
                          {n / 2, 0}, {n, n / 2}, {n / 2, n}, {0, n / 2},
                          grid.center()};
    auto engine = make_engine(seed, static_cast<std::uint64_t>(n));
    std::uniform_int_distribution<int> coord(0, n);
    for (int k = 0; k < random_sites; ++k) out.push_back({coord(engine), coord(engine)});
    return out;
}

RepresentativeReport check_representative_bound(GridSize grid, const theory::StepVariance& params, double lambda) {
    const CovarianceEngine engine(grid);
    const field::HarmonicCache cache(grid);
    return check_representative_bound(engine, cache, params, lambda, representative_sites(grid));
}

RepresentativeReport check_representative_bound(const CovarianceEngine& engine, const field::HarmonicCache& cache,
                                                const theory::StepVariance& params, double lambda,
                                                const std::vector<Site>& sites) {
    const GridSize grid = cache.grid();
    if (engine.grid() != grid) throw InvalidArgument("grid mismatch");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("invalid scale: outside [0, 1]");

    RepresentativeReport report;
    report.n = grid.n();
    report.lambda = lambda;
    for (const Site v : sites) {
        const Site rep = field::nearest_representative(grid, lambda, v);
        double var = 0.0;
        if (rep != v) {
            var = engine.variance(psi_coarse_functional(cache, v, lambda, params) -
                                  psi_coarse_functional(cache, rep, lambda, params));
        }
        report.samples.push_back({v, rep, var});
        report.max_variance = std::max(report.max_variance, var);
    }
    return report;
}

IndependenceReport check_independence(GridSize grid, const theory::StepVariance& params, int count,
                                      std::uint64_t seed) {
    const field::ScaleGrid scales(grid, &params);
    const field::HarmonicCache cache(grid);
    const CovarianceEngine engine(grid);
    const int n = grid.n();

    auto engine_rng = make_engine(seed, static_cast<std::uint64_t>(n));
    std::uniform_int_distribution<int> coord(1, n - 1);
    std::bernoulli_distribution coin(0.5);
    const auto pick_pair = [&](const std::vector<double>& pool) {
        std::uniform_int_distribution<std::size_t> idx(0, pool.size() - 1);
        std::size_t a = idx(engine_rng);
        std::size_t b = idx(engine_rng);
        while (b == a) b = idx(engine_rng);
        return std::pair{pool[std::min(a, b)], pool[std::max(a, b)]};
    };

    IndependenceReport report;
    report.n = n;
    while (static_cast<int>(report.tuples.size()) < count) {
        const Site v{coord(engine_rng), coord(engine_rng)};
        const Site w{coord(engine_rng), coord(engine_rng)};
        const double rho = field::branching_scale(v, w, grid, scales);
        std::vector<double> above;
        std::vector<double> below;
        for (const double s : scales.scales()) {
            if (s > rho + kScaleTol) above.push_back(s);
            if (s < rho - kScaleTol) below.push_back(s);
        }
        if (above.size() < 2) continue;
        const bool after = below.size() < 2 || coin(engine_rng);

        IndependenceTuple t{v, w, rho, 0, 0, 0, 0, after, false, 0.0};
        std::tie(t.lambda, t.lambda2) = pick_pair(above);
        std::tie(t.mu, t.mu2) = pick_pair(after ? above : below);

        const LinearFunctional x = psi_increment_functional(cache, v, t.lambda, t.lambda2, params);
        const LinearFunctional y = psi_increment_functional(cache, w, t.mu, t.mu2, params);
        t.shells_disjoint = avoids_interior(y, field::neighborhood(grid, v, t.lambda).box) ||
                            avoids_interior(x, field::neighborhood(grid, w, t.mu).box);
        t.covariance = engine.covariance(x, y);

        const double a = std::abs(t.covariance);
        report.max_abs_covariance = std::max(report.max_abs_covariance, a);
        if (after) {
            report.max_abs_after_branching = std::max(report.max_abs_after_branching, a);
        } else {
            report.max_abs_straddling = std::max(report.max_abs_straddling, a);
            ++report.straddling;
        }
        if (t.shells_disjoint) {
            report.max_abs_disjoint_shells = std::max(report.max_abs_disjoint_shells, a);
            ++report.disjoint_shells;
        }
        report.tuples.push_back(t);
    }
    return report;
}

std::vector<SmoothnessSample> check_box_smoothness(GridSize grid, const std::vector<int>& half_widths) {
    const CovarianceEngine engine(grid);
    const int n = grid.n();
    std::vector<SmoothnessSample> out;
    for (const int l : half_widths) {
        if (l < 2 || 2 * l > n) throw InvalidArgument("box half-width does not fit in V_N");
        for (const bool at_boundary : {false, true}) {
            const Site u = at_boundary ? Site{l, n / 2} : grid.center();
            const Site v = u + Site{l / 2, l / 2};
            const auto box = lattice::LatticeBox::from_corners(u - Site{l, l}, u + Site{l, l});
            const double var = engine.variance(box_average(grid, box, u) - box_average(grid, box, v));
            out.push_back({l, u, v, at_boundary, var});
        }
    }
    return out;
}

}  // namespace igff::exact
