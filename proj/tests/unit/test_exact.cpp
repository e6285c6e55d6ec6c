#include <doctest.h>

#include <cmath>
#include <random>

#include "igff/error.hpp"
#include "igff/exact/checks.hpp"
#include "igff/exact/functional.hpp"
#include "igff/exact/gaussian.hpp"
#include "igff/field/sampler.hpp"
#include "igff/field/scale_field.hpp"
#include "igff/lattice/green.hpp"
#include "oracles/dense_green.hpp"
#include "oracles/erfc.hpp"

using namespace igff;
using namespace igff::exact;
using field::GridSize;

namespace {

const theory::StepVariance kDecreasing = theory::StepVariance::from_sigma_sq({2.0, 0.5}, {0.5, 1.0});

LinearFunctional random_functional(GridSize grid, std::mt19937_64& rng, int terms) {
    std::uniform_int_distribution<int> coord(0, grid.n());
    std::normal_distribution<double> w;
    LinearFunctional f(grid);
    for (int k = 0; k < terms; ++k) f.add(LinearFunctional::point_mass(grid, {coord(rng), coord(rng)}), w(rng));
    return f;
}

}  // namespace

TEST_CASE("functionals reproduce coarse values and psi") {
    const GridSize grid(32);
    const field::HarmonicCache cache(grid);
    const field::ScaleField psi = field::build_psi(field::sample_dgff(grid, 8), kDecreasing);
    const auto& sample = psi.base();

    const Site v{13, 21};
    const auto point = functional_for(cache, v, 1.0, kDecreasing, FunctionalKind::PhiCoarse);
    REQUIRE(point.weights.size() == 1);
    CHECK(point.weights.begin()->second == 1.0);
    CHECK(point.apply(sample) == sample(v));

    for (const Site s : {Site{16, 16}, Site{1, 1}, Site{30, 12}, Site{0, 9}}) {
        CHECK(std::abs(functional_for(cache, s, 1.0, kDecreasing, FunctionalKind::PsiCoarse).apply(sample) - psi.psi(s)) <=
              1e-10);
        for (const double l : {0.2, 0.4, 0.5, 0.8}) {
            CHECK(std::abs(phi_coarse_functional(cache, s, l).apply(sample) - psi.coarse(s, l)) <= 1e-10);
            CHECK(std::abs(psi_coarse_functional(cache, s, l, kDecreasing).apply(sample) - psi.psi_coarse(s, l)) <= 1e-10);
        }
        const double inc = functional_for(cache, s, 0.2, kDecreasing, FunctionalKind::PsiIncrement, 0.8).apply(sample);
        CHECK(std::abs(inc - (psi.psi_coarse(s, 0.8) - psi.psi_coarse(s, 0.2))) <= 1e-10);
    }
    CHECK_THROWS_WITH_AS(psi_increment_functional(cache, v, 0.8, 0.2, kDecreasing), doctest::Contains("invalid scale"),
                         InvalidArgument);
    CHECK_THROWS_WITH_AS(phi_coarse_functional(cache, v, 1.5), doctest::Contains("invalid scale"), InvalidArgument);
}

TEST_CASE("coarse increments in the bulk carry zero total weight") {
    const GridSize grid(64);
    const field::HarmonicCache cache(grid);
    for (const Site v : {Site{32, 32}, Site{20, 40}}) {
        const auto inc = phi_coarse_functional(cache, v, 0.75) - phi_coarse_functional(cache, v, 1.0 / 3.0);
        CHECK(std::abs(inc.total_weight()) <= 1e-12);
    }
}

TEST_CASE("functional linearity") {
    const GridSize grid(16);
    const field::HarmonicCache cache(grid);
    const auto f = psi_coarse_functional(cache, {7, 9}, 0.5, kDecreasing);
    const auto a = field::sample_dgff(grid, 1);
    const auto b = field::sample_dgff(grid, 2);
    field::FieldSample mix = a;
    for (std::size_t k = 0; k < mix.values.size(); ++k) mix.values[k] = 0.3 * a.values[k] - 1.7 * b.values[k];
    CHECK(f.apply(mix) == doctest::Approx(0.3 * f.apply(a) - 1.7 * f.apply(b)).epsilon(1e-12));
    CHECK_THROWS_AS(f.apply(field::sample_dgff(GridSize(20), 1)), InvalidArgument);
}

TEST_CASE("exact covariance") {
    const GridSize grid(24);
    const CovarianceEngine engine(grid);
    const auto dense = oracle::dense_green(0, 0, 25, 25);
    for (const Site v : {Site{12, 12}, Site{3, 20}}) {
        const auto d = LinearFunctional::point_mass(grid, v);
        CHECK(exact_cov(d, d, engine) == doctest::Approx(dense(v.x, v.y, v.x, v.y)).epsilon(1e-10));
    }
    std::mt19937_64 rng(41);
    for (int k = 0; k < 100; ++k) {
        const auto f = random_functional(grid, rng, 1 + k % 7);
        const auto g = random_functional(grid, rng, 3);
        CHECK(engine.variance(f) >= -1e-12);
        CHECK(exact_cov(f, g, engine) == doctest::Approx(exact_cov(g, f, engine)).epsilon(1e-10));
    }
    const LinearFunctional other = LinearFunctional::point_mass(GridSize(16), {3, 3});
    CHECK_THROWS_WITH_AS(exact_cov(other, other, engine), doctest::Contains("grid mismatch"), InvalidArgument);
}

TEST_CASE("orthogonal increments and additivity") {
    const GridSize grid(32);
    const field::HarmonicCache cache(grid);
    const CovarianceEngine engine(grid);
    const theory::StepVariance p = theory::StepVariance::from_sigma_sq({2.0, 0.7, 1.3}, {0.4, 0.8, 1.0});
    const field::ScaleGrid scales(grid, &p);
    const auto& s = scales.scales();
    for (const Site v : {grid.center(), Site{4, 27}, Site{1, 16}}) {
        for (std::size_t a = 0; a + 3 < s.size(); a += 2) {
            const auto first = psi_increment_functional(cache, v, s[a], s[a + 1], p);
            const auto second = psi_increment_functional(cache, v, s[a + 2], s[a + 3], p);
            CHECK(std::abs(engine.covariance(first, second)) <= 1e-8);
            const double whole = engine.variance(psi_increment_functional(cache, v, s[a], s[a + 2], p));
            const double lower = engine.variance(psi_increment_functional(cache, v, s[a], s[a + 1], p));
            const double upper = engine.variance(psi_increment_functional(cache, v, s[a + 1], s[a + 2], p));
            CHECK(std::abs(whole - lower - upper) <= 1e-8);
        }
    }
}

TEST_CASE("Green-difference identity inside each step") {
    const theory::StepVariance p = theory::StepVariance::from_sigma_sq({2.0, 0.5, 1.2}, {0.4, 0.7, 1.0});
    for (const int n : {32, 64}) {
        const GridSize grid(n);
        const field::HarmonicCache cache(grid);
        const CovarianceEngine engine(grid);
        const std::vector<Site> sites{grid.center(), {1, 1}, {n / 4, n / 3}, {n - 2, n / 2}};
        CHECK(green_difference_identity_error(engine, cache, p, sites) <= 1e-8);
    }
    const GridSize grid(16);
    const field::HarmonicCache cache(grid);
    CHECK_THROWS_AS(increment_variance(cache, kDecreasing, {8, 8}, 0.25, 0.75), InvalidArgument);
}

TEST_CASE("variance deviation over the box") {
    const theory::StepVariance homo = theory::StepVariance::homogeneous();
    std::vector<VarianceReport> reports;
    for (const int n : {32, 64, 128}) reports.push_back(check_variance_bounds(GridSize(n), homo, 0.25));
    for (const auto& r : reports) {
        CAPTURE(r.n);
        // the centre deviation stays bounded and the boundary-adjacent sites stay below it
        CHECK(std::abs(r.center_deviation) <= 2.0);
        CHECK(r.all_max <= r.center_deviation + 1.0);
        CHECK(r.max_abs_deviation() <= 2.0 * reports.front().max_abs_deviation());
    }
    // Var / log N approaches 1 from above as N doubles
    CHECK(reports[0].center_ratio > reports[1].center_ratio);
    CHECK(reports[1].center_ratio > reports[2].center_ratio);
    CHECK(reports[2].center_ratio > 1.0);

    const auto dec = check_variance_bounds(GridSize(64), kDecreasing, 0.125);
    CHECK(dec.max_abs_deviation() <= 2.0 * check_variance_bounds(GridSize(32), kDecreasing, 0.125).max_abs_deviation());
    CHECK_THROWS_AS(check_variance_bounds(GridSize(32), homo, 0.0), InvalidArgument);
    CHECK_THROWS_AS(check_variance_bounds(GridSize(32), homo, 0.6), InvalidArgument);
}

TEST_CASE("variance deviation is invariant under the symmetries of the square") {
    const GridSize grid(64);
    const int n = grid.n();
    const field::HarmonicCache cache(grid);
    const double log_n = std::log(static_cast<double>(n));
    const auto deviation = [&](Site v) {
        double d = 0.0;
        for (std::size_t i = 1; i <= kDecreasing.size(); ++i) {
            const double var = increment_variance(cache, kDecreasing, v, kDecreasing.scale(i - 1), kDecreasing.scale(i));
            d += var - kDecreasing.step_width(i) * kDecreasing.sigma_sq()[i - 1] * log_n;
        }
        return d;
    };
    for (const Site v : {Site{20, 27}, Site{5, 40}, Site{1, 2}}) {
        const double base = deviation(v);
        const std::vector<Site> images{{v.x, v.y},         {n - v.x, v.y},     {v.x, n - v.y},     {n - v.x, n - v.y},
                                       {v.y, v.x},         {n - v.y, v.x},     {v.y, n - v.x},     {n - v.y, n - v.x}};
        for (const Site w : images) CHECK(std::abs(deviation(w) - base) <= 1e-8);
    }
}

TEST_CASE("representative substitution") {
    const GridSize grid(32);
    const field::HarmonicCache cache(grid);
    const CovarianceEngine engine(grid);
    const auto reps = field::representatives(grid, 0.6);
    const auto own = check_representative_bound(engine, cache, kDecreasing, 0.6, {reps.front(), reps.back()});
    CHECK(own.max_variance == 0.0);
    const auto all = check_representative_bound(engine, cache, kDecreasing, 1.0, representative_sites(grid));
    CHECK(all.max_variance == 0.0);
    CHECK(representative_sites(grid).size() == 17);
    CHECK_THROWS_AS(check_representative_bound(engine, cache, kDecreasing, 1.2, {}), InvalidArgument);

    const double small = check_representative_bound(grid, kDecreasing, 0.5).max_variance;
    const double large = check_representative_bound(GridSize(128), kDecreasing, 0.5).max_variance;
    CHECK(small > 0.0);
    CHECK(large <= 2.0 * small);
}

TEST_CASE("Gaussian tail bracket") {
    const auto at_sigma = gaussian_tail_bounds(1.3, 1.3);
    CHECK(at_sigma.upper == doctest::Approx(std::exp(-0.5) / std::sqrt(2.0 * M_PI)).epsilon(1e-14));
    CHECK(at_sigma.upper == doctest::Approx(0.241971).epsilon(1e-6));
    CHECK(at_sigma.lower == 0.0);
    for (const double sigma : {0.5, 1.0, 2.0}) {
        for (const double r : {1.5, 2.0, 3.0}) {
            const auto b = gaussian_tail_bounds(r * sigma, sigma);
            const auto exact = static_cast<double>(oracle::gaussian_tail(r * sigma, sigma));
            CHECK(b.lower <= exact);
            CHECK(exact <= b.upper);
        }
        double prev = 1e300;
        for (int k = 1; k < 60; ++k) {
            const auto b = gaussian_tail_bounds(0.1 * k * sigma, sigma);
            CHECK(b.lower <= b.upper);
            CHECK(b.upper < prev);
            prev = b.upper;
        }
    }
    CHECK_THROWS_AS(gaussian_tail_bounds(0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(gaussian_tail_bounds(-1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(gaussian_tail_bounds(1.0, 0.0), InvalidArgument);
}

TEST_CASE("independence after branching") {
    for (const auto& p : {theory::StepVariance::homogeneous(), kDecreasing}) {
        const IndependenceReport r = check_independence(GridSize(32), p, 200, 7);
        CHECK(r.tuples.size() == 200);
        CHECK(r.max_abs_after_branching <= 1e-8);
        CHECK(r.max_abs_disjoint_shells <= 1e-8);
        for (const auto& t : r.tuples) {
            CHECK(t.lambda < t.lambda2);
            CHECK(t.mu < t.mu2);
            CHECK(t.lambda > t.rho);
            if (t.after_branching) {
                CHECK(t.mu > t.rho);
            } else {
                CHECK(t.mu2 < t.rho);
            }
        }
    }
}

TEST_CASE("box smoothness") {
    const auto samples = check_box_smoothness(GridSize(128), {8, 16, 32});
    REQUIRE(samples.size() == 6);
    for (const bool boundary : {false, true}) {
        double at8 = 0.0;
        for (const auto& s : samples) {
            if (s.at_boundary != boundary) continue;
            if (s.half_width == 8) at8 = s.variance;
            CHECK(s.variance > 0.0);
            CHECK(s.variance <= 2.0 * at8);
        }
    }
    CHECK_THROWS_AS(check_box_smoothness(GridSize(32), {20}), InvalidArgument);
}
