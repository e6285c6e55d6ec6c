#include "igff/field/sampler.hpp"

#include "igff/error.hpp"
#include "igff/rng.hpp"

namespace igff::field {

DgffSampler::DgffSampler(GridSize grid)
    : DgffSampler(grid, std::make_shared<const lattice::GreenSolver>(grid.box())) {}

DgffSampler::DgffSampler(GridSize grid, std::shared_ptr<const lattice::GreenSolver> solver)
    : grid_(grid), solver_(std::move(solver)) {
    if (!solver_ || solver_->box() != grid_.box()) throw InvalidArgument("solver does not match grid");
}

FieldSample DgffSampler::sample(std::uint64_t seed) const {
    const LatticeBox box = grid_.box();
    const auto n = static_cast<Eigen::Index>(box.interior_count());

    auto engine = make_engine(seed, static_cast<std::uint64_t>(grid_.n()));
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(engine);

    const auto& factor = solver_->factor();
    const Eigen::VectorXd y = factor.matrixU().solve(z);
    const Eigen::VectorXd x = factor.permutationPinv() * y;

    FieldSample out{grid_, std::vector<double>(box.size(), 0.0), seed};
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values[box.index(box.interior_site(static_cast<std::size_t>(i)))] = x(i);
    }
    return out;
}

FieldSample sample_dgff(GridSize grid, std::uint64_t seed) { return DgffSampler(grid).sample(seed); }

}  // namespace igff::field
