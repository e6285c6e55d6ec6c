#include "igff/lattice/potential_kernel.hpp"

#include <cstdlib>

#include "igff/error.hpp"

namespace igff::lattice {

PotentialKernel::PotentialKernel(int radius) : radius_(radius) {
    if (radius < 1) throw InvalidArgument("potential kernel radius must be >= 1");
    const LatticeBox aux({-radius, -radius}, 2 * radius + 1, 2 * radius + 1);
    const GreenSolver solver(aux);
    const Eigen::VectorXd g0 = solver.column({0, 0});
    const double g00 = g0(static_cast<Eigen::Index>(aux.index({0, 0})));
    table_.resize(aux.size());
    for (std::size_t i = 0; i < aux.size(); ++i) table_[i] = g00 - g0(static_cast<Eigen::Index>(i));
    table_[aux.index({0, 0})] = 0.0;
}

bool PotentialKernel::covers(Site w) const { return std::abs(w.x) <= radius_ && std::abs(w.y) <= radius_; }

double PotentialKernel::operator()(Site w) const {
    if (!covers(w)) throw InvalidArgument("kernel table incomplete: displacement " + to_string(w));
    const auto side = static_cast<std::size_t>(2 * radius_ + 1);
    return table_[static_cast<std::size_t>(w.y + radius_) * side + static_cast<std::size_t>(w.x + radius_)];
}

double potential_kernel(Site w, int radius) {
    if (std::abs(w.x) > radius || std::abs(w.y) > radius) {
        throw InvalidArgument("radius too small for displacement " + to_string(w));
    }
    return PotentialKernel(radius)(w);
}

double green_via_lawler(const GreenSolver& solver, Site x, Site y, const PotentialKernel& a) {
    const LatticeBox& box = solver.box();
    if (!box.contains(x) || !box.contains(y)) throw InvalidArgument("site not in box");
    const HarmonicWeights hm = solver.harmonic_measure(x);
    double acc = 0.0;
    for (const auto& [z, w] : hm.weights) acc += w * a(z - y);
    return acc - a(y - x);
}

double green_via_lawler(const LatticeBox& box, Site x, Site y, const PotentialKernel& a) {
    return green_via_lawler(GreenSolver(box), x, y, a);
}

}  // namespace igff::lattice
