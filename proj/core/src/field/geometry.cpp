#include "igff/field/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "igff/error.hpp"

namespace igff::field {

namespace {

// Guards exact powers such as 256^{0.5} evaluating to 15.999999999999998.
constexpr double kRoundingSlack = 1e-9;

std::vector<int> representative_axis(GridSize grid, double lambda) {
    const int count = static_cast<int>(std::floor(std::pow(static_cast<double>(grid.n()), lambda) + kRoundingSlack));
    const double spacing = static_cast<double>(grid.n()) / count;
    std::vector<int> axis;
    axis.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const auto c = static_cast<int>(std::lround((k + 0.5) * spacing));
        axis.push_back(std::clamp(c, 1, grid.n() - 1));
    }
    return axis;
}

int nearest_on_axis(const std::vector<int>& axis, int x) {
    int best = axis.front();
    for (const int c : axis) {
        if (std::abs(c - x) < std::abs(best - x)) best = c;
    }
    return best;
}

void require_scale(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("scale outside [0, 1]");
}

}  // namespace

GridSize::GridSize(int n) : n_(n) {
    if (n < 4) throw InvalidArgument("grid size N must be >= 4");
}

double GridSize::log_n2() const { return 2.0 * std::log(static_cast<double>(n_)); }

int half_width(GridSize grid, double lambda) {
    require_scale(lambda);
    const double side = std::pow(static_cast<double>(grid.n()), 1.0 - lambda);
    return static_cast<int>(std::ceil(side / 2.0 - kRoundingSlack));
}

Neighborhood neighborhood(GridSize grid, Site v, double lambda) {
    require_scale(lambda);
    const LatticeBox vn = grid.box();
    if (!vn.contains(v)) throw InvalidArgument("site not in V_N: " + lattice::to_string(v));
    if (lambda == 0.0) return {v, lambda, vn};
    if (lambda == 1.0) return {v, lambda, LatticeBox(v, 1, 1)};
    const int h = half_width(grid, lambda);
    const LatticeBox square = LatticeBox::from_corners({v.x - h, v.y - h}, {v.x + h, v.y + h});
    return {v, lambda, square.intersect(vn)};
}

ScaleGrid::ScaleGrid(GridSize grid, const theory::StepVariance* params) {
    const double levels = std::log2(static_cast<double>(grid.n()));
    const int kmax = static_cast<int>(std::floor(levels + kRoundingSlack));
    for (int k = 0; k <= kmax; ++k) scales_.push_back(std::min(1.0, k / levels));
    scales_.push_back(1.0);
    if (params != nullptr) {
        for (const double l : params->lambda()) scales_.push_back(l);
    }
    std::sort(scales_.begin(), scales_.end());
    scales_.erase(std::unique(scales_.begin(), scales_.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                  scales_.end());
}

ScaleGrid::ScaleGrid(std::vector<double> scales) : scales_(std::move(scales)) {
    for (const double s : scales_) require_scale(s);
    std::sort(scales_.begin(), scales_.end());
    scales_.erase(std::unique(scales_.begin(), scales_.end()), scales_.end());
}

bool ScaleGrid::contains(double lambda) const {
    return std::any_of(scales_.begin(), scales_.end(), [&](double s) { return std::abs(s - lambda) < 1e-12; });
}

double branching_scale(Site v, Site w, GridSize grid, const ScaleGrid& scales) {
    // Neighbourhoods are nested in lambda, so scan downwards.
    const auto& s = scales.scales();
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        const LatticeBox a = neighborhood(grid, v, *it).box;
        const LatticeBox b = neighborhood(grid, w, *it).box;
        if (!a.intersect(b).empty()) return *it;
    }
    return 0.0;
}

double branching_scale(Site v, Site w, GridSize grid) { return branching_scale(v, w, grid, ScaleGrid(grid)); }

std::vector<Site> representatives(GridSize grid, double lambda) {
    require_scale(lambda);
    std::vector<Site> out;
    if (lambda == 1.0) {
        out.reserve(grid.sites());
        const LatticeBox vn = grid.box();
        for (std::size_t i = 0; i < vn.size(); ++i) out.push_back(vn.site(i));
        return out;
    }
    const std::vector<int> axis = representative_axis(grid, lambda);
    out.reserve(axis.size() * axis.size());
    for (const int y : axis) {
        for (const int x : axis) out.push_back({x, y});
    }
    return out;
}

Site nearest_representative(GridSize grid, double lambda, Site v) {
    require_scale(lambda);
    if (lambda == 1.0) return v;
    const std::vector<int> axis = representative_axis(grid, lambda);
    return {nearest_on_axis(axis, v.x), nearest_on_axis(axis, v.y)};
}

}  // namespace igff::field
