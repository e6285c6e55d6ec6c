#pragma once

#include <vector>

#include "igff/lattice/box.hpp"
#include "igff/theory/step_variance.hpp"

namespace igff::field {

using lattice::LatticeBox;
using lattice::Site;

/// V_N = {0, ..., N}^2 with N >= 4.
class GridSize {
public:
    explicit GridSize(int n);

    int n() const { return n_; }
    int side() const { return n_ + 1; }
    std::size_t sites() const { return static_cast<std::size_t>(side()) * static_cast<std::size_t>(side()); }
    LatticeBox box() const { return LatticeBox::square(n_); }
    Site center() const { return {n_ / 2, n_ / 2}; }
    /// log N^2, the normalisation of levels.
    double log_n2() const;

    friend bool operator==(GridSize, GridSize) = default;

private:
    int n_;
};

/// Half-width ceil(N^{1-lambda} / 2) of the square neighbourhood at scale lambda.
int half_width(GridSize grid, double lambda);

/// [v]_lambda: the square of side N^{1-lambda} centred at v, clipped to V_N,
/// with [v]_0 = V_N and [v]_1 = {v}.
struct Neighborhood {
    Site center;
    double scale;
    LatticeBox box;
};

Neighborhood neighborhood(GridSize grid, Site v, double lambda);

/// Scales {k / log2 N : 0 <= k <= floor(log2 N)} plus 1 plus the lambda_i.
class ScaleGrid {
public:
    ScaleGrid(GridSize grid, const theory::StepVariance* params = nullptr);
    explicit ScaleGrid(std::vector<double> scales);

    const std::vector<double>& scales() const { return scales_; }
    bool contains(double lambda) const;

private:
    std::vector<double> scales_;
};

/// rho(v, v'): largest grid scale at which [v] and [v'] intersect.
double branching_scale(Site v, Site w, GridSize grid, const ScaleGrid& scales);
double branching_scale(Site v, Site w, GridSize grid);

/// floor(N^lambda)^2 centres of a regular sub-grid of V_N, kept off the
/// boundary; all of V_N for lambda = 1.
std::vector<Site> representatives(GridSize grid, double lambda);

/// A representative at scale lambda closest to v (Euclidean).
Site nearest_representative(GridSize grid, double lambda, Site v);

}  // namespace igff::field
