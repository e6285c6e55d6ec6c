#include "igff/field/harmonic_cache.hpp"

namespace igff::field {

std::shared_ptr<const lattice::GreenSolver> HarmonicCache::solver(int width_x, int width_y) const {
    const std::pair<int, int> key{width_x, width_y};
    {
        const std::lock_guard lock(mutex_);
        if (const auto it = solvers_.find(key); it != solvers_.end()) return it->second;
    }
    auto made = std::make_shared<const lattice::GreenSolver>(LatticeBox({0, 0}, width_x, width_y));
    const std::lock_guard lock(mutex_);
    return solvers_.try_emplace(key, std::move(made)).first->second;
}

std::shared_ptr<const RelativeWeights> HarmonicCache::weights(Site v, double lambda) const {
    const Neighborhood nb = neighborhood(grid_, v, lambda);
    const Extents key{v.x - nb.box.lo().x, nb.box.hi().x - v.x, v.y - nb.box.lo().y, nb.box.hi().y - v.y};
    {
        const std::lock_guard lock(mutex_);
        if (const auto it = weights_.find(key); it != weights_.end()) return it->second;
    }

    auto rel = std::make_shared<RelativeWeights>();
    const Site source{key.left, key.down};
    const int wx = key.left + key.right + 1;
    const int wy = key.down + key.up + 1;
    if (!nb.box.is_interior(v)) {
        rel->weights.emplace_back(Site{0, 0}, 1.0);
    } else {
        const auto s = solver(wx, wy);
        for (const auto& [z, w] : s->harmonic_measure(source).weights) rel->weights.emplace_back(z - source, w);
    }
    const std::lock_guard lock(mutex_);
    return weights_.try_emplace(key, std::move(rel)).first->second;
}

lattice::HarmonicWeights HarmonicCache::harmonic_measure(Site v, double lambda) const {
    const auto rel = weights(v, lambda);
    lattice::HarmonicWeights hm{v, {}};
    hm.weights.reserve(rel->weights.size());
    for (const auto& [d, w] : rel->weights) hm.weights.emplace_back(v + d, w);
    return hm;
}

std::size_t HarmonicCache::cached_entries() const {
    const std::lock_guard lock(mutex_);
    return weights_.size();
}

}  // namespace igff::field
