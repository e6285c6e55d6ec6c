#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "igff/field/geometry.hpp"
#include "igff/lattice/green.hpp"

namespace igff::field {

/// One realisation of the DGFF on V_N; values are row-major over V_N and
/// vanish on the boundary.
struct FieldSample {
    GridSize grid;
    std::vector<double> values;
    std::uint64_t seed = 0;

    double operator()(Site v) const { return values[grid.box().index(v)]; }
};

/// Exact sampler for the DGFF with covariance G_{V_N}.
///
/// With P Q P^T = L L^T, the vector P^T L^{-T} z for z i.i.d. standard normal
/// has covariance Q^{-1} = G. The factorisation is shared read-only, so
/// sample() can be called concurrently.
class DgffSampler {
public:
    explicit DgffSampler(GridSize grid);
    DgffSampler(GridSize grid, std::shared_ptr<const lattice::GreenSolver> solver);

    GridSize grid() const { return grid_; }
    const lattice::GreenSolver& solver() const { return *solver_; }
    std::shared_ptr<const lattice::GreenSolver> shared_solver() const { return solver_; }

    /// Deterministic in (seed, N): the normal stream is keyed by both.
    FieldSample sample(std::uint64_t seed) const;

private:
    GridSize grid_;
    std::shared_ptr<const lattice::GreenSolver> solver_;
};

FieldSample sample_dgff(GridSize grid, std::uint64_t seed);

}  // namespace igff::field
