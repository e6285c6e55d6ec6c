#include "igff/exact/functional.hpp"

#include <algorithm>

#include "igff/error.hpp"

namespace igff::exact {

namespace {

void require_scale(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("invalid scale: outside [0, 1]");
}

}  // namespace

LinearFunctional LinearFunctional::point_mass(GridSize g, Site v) {
    if (!g.box().contains(v)) throw InvalidArgument("site not in V_N: " + lattice::to_string(v));
    LinearFunctional f(g);
    f.weights[g.box().index(v)] = 1.0;
    return f;
}

double LinearFunctional::apply(const field::FieldSample& sample) const {
    if (sample.grid != grid) throw InvalidArgument("grid mismatch");
    double acc = 0.0;
    for (const auto& [k, w] : weights) acc += w * sample.values[k];
    return acc;
}

double LinearFunctional::total_weight() const {
    double t = 0.0;
    for (const auto& [k, w] : weights) t += w;
    return t;
}

LinearFunctional& LinearFunctional::add(const LinearFunctional& other, double scale) {
    if (other.grid != grid) throw InvalidArgument("grid mismatch");
    for (const auto& [k, w] : other.weights) weights[k] += scale * w;
    return *this;
}

LinearFunctional phi_coarse_functional(const field::HarmonicCache& cache, Site v, double lambda) {
    require_scale(lambda);
    LinearFunctional f(cache.grid());
    const lattice::LatticeBox box = cache.grid().box();
    for (const auto& [z, w] : cache.harmonic_measure(v, lambda).weights) f.weights[box.index(z)] += w;
    return f;
}

LinearFunctional psi_coarse_functional(const field::HarmonicCache& cache, Site v, double lambda,
                                       const theory::StepVariance& params) {
    require_scale(lambda);
    LinearFunctional f(cache.grid());
    for (std::size_t i = 1; i <= params.size(); ++i) {
        const double lo = params.scale(i - 1);
        if (!(lo < lambda)) break;
        const double hi = std::min(lambda, params.scale(i));
        const double s = params.sigma()[i - 1];
        f.add(phi_coarse_functional(cache, v, hi), s);
        f.add(phi_coarse_functional(cache, v, lo), -s);
    }
    return f;
}

LinearFunctional psi_increment_functional(const field::HarmonicCache& cache, Site v, double lo, double hi,
                                          const theory::StepVariance& params) {
    require_scale(lo);
    require_scale(hi);
    if (lo > hi) throw InvalidArgument("invalid scale: increment bounds reversed");
    return psi_coarse_functional(cache, v, hi, params) - psi_coarse_functional(cache, v, lo, params);
}

LinearFunctional functional_for(const field::HarmonicCache& cache, Site v, double lambda,
                                const theory::StepVariance& params, FunctionalKind kind, double upper) {
    switch (kind) {
        case FunctionalKind::PhiCoarse:
            return phi_coarse_functional(cache, v, lambda);
        case FunctionalKind::PsiCoarse:
            return psi_coarse_functional(cache, v, lambda, params);
        case FunctionalKind::PsiIncrement:
            return psi_increment_functional(cache, v, lambda, upper, params);
    }
    throw InvalidArgument("unknown functional kind");
}

CovarianceEngine::CovarianceEngine(GridSize grid)
    : CovarianceEngine(grid, std::make_shared<const lattice::GreenSolver>(grid.box())) {}

CovarianceEngine::CovarianceEngine(GridSize grid, std::shared_ptr<const lattice::GreenSolver> solver)
    : grid_(grid), solver_(std::move(solver)) {
    if (!solver_ || solver_->box() != grid_.box()) throw InvalidArgument("solver does not match grid");
}

double CovarianceEngine::covariance(const LinearFunctional& a, const LinearFunctional& b) const {
    if (a.grid != grid_ || b.grid != grid_) throw InvalidArgument("grid mismatch");
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid_.sites()));
    for (const auto& [k, w] : b.weights) rhs(static_cast<Eigen::Index>(k)) = w;
    const Eigen::VectorXd gb = solver_->apply(rhs);
    double acc = 0.0;
    for (const auto& [k, w] : a.weights) acc += w * gb(static_cast<Eigen::Index>(k));
    return acc;
}

double exact_cov(const LinearFunctional& a, const LinearFunctional& b, const CovarianceEngine& engine) {
    return engine.covariance(a, b);
}

}  // namespace igff::exact
