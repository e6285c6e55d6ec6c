#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "igff/field/geometry.hpp"
#include "igff/lattice/green.hpp"

namespace igff::field {

/// Exit distribution from v of [v]_lambda, stored as offsets relative to v.
struct RelativeWeights {
    std::vector<std::pair<Site, double>> weights;
};

/// Memoised harmonic measures of the neighbourhoods [v]_lambda of one grid.
///
/// The exit law only depends on how far the clipped square extends from v in
/// each direction, so entries are shared between translates. One sparse
/// factorisation is kept per box shape. Safe for concurrent readers.
class HarmonicCache {
public:
    explicit HarmonicCache(GridSize grid) : grid_(grid) {}

    GridSize grid() const { return grid_; }

    std::shared_ptr<const RelativeWeights> weights(Site v, double lambda) const;

    /// Absolute-position harmonic weights of [v]_lambda seen from v.
    lattice::HarmonicWeights harmonic_measure(Site v, double lambda) const;

    /// Factorisation for a box shape (origin at 0).
    std::shared_ptr<const lattice::GreenSolver> solver(int width_x, int width_y) const;

    std::size_t cached_entries() const;

private:
    struct Extents {
        int left, right, down, up;
        friend auto operator<=>(const Extents&, const Extents&) = default;
    };

    GridSize grid_;
    mutable std::mutex mutex_;
    mutable std::map<Extents, std::shared_ptr<const RelativeWeights>> weights_;
    mutable std::map<std::pair<int, int>, std::shared_ptr<const lattice::GreenSolver>> solvers_;
};

}  // namespace igff::field
