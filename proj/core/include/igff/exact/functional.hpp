#pragma once

#include <map>
#include <memory>

#include "igff/field/harmonic_cache.hpp"
#include "igff/field/sampler.hpp"
#include "igff/lattice/green.hpp"
#include "igff/theory/step_variance.hpp"

namespace igff::exact {

using field::GridSize;
using lattice::Site;

/// A linear combination sum_v w_v phi_v of DGFF values on V_N.
struct LinearFunctional {
    GridSize grid;
    std::map<std::size_t, double> weights;

    explicit LinearFunctional(GridSize g) : grid(g) {}

    static LinearFunctional point_mass(GridSize g, Site v);

    double apply(const field::FieldSample& sample) const;
    double total_weight() const;

    LinearFunctional& add(const LinearFunctional& other, double scale = 1.0);
    friend LinearFunctional operator-(LinearFunctional a, const LinearFunctional& b) { return a.add(b, -1.0); }
    friend LinearFunctional operator+(LinearFunctional a, const LinearFunctional& b) { return a.add(b, 1.0); }
    friend LinearFunctional operator*(double s, LinearFunctional a) {
        for (auto& [k, w] : a.weights) w *= s;
        return a;
    }
};

enum class FunctionalKind { PhiCoarse, PsiCoarse, PsiIncrement };

/// phi_v(lambda) as harmonic weights on the boundary of [v]_lambda.
LinearFunctional phi_coarse_functional(const field::HarmonicCache& cache, Site v, double lambda);

/// psi_v(lambda) through its decomposition into sigma-weighted phi increments.
LinearFunctional psi_coarse_functional(const field::HarmonicCache& cache, Site v, double lambda,
                                       const theory::StepVariance& params);

/// psi_v(hi) - psi_v(lo).
LinearFunctional psi_increment_functional(const field::HarmonicCache& cache, Site v, double lo, double hi,
                                          const theory::StepVariance& params);

/// Dispatch on kind; `upper` is only used for increments (lambda -> upper).
LinearFunctional functional_for(const field::HarmonicCache& cache, Site v, double lambda,
                                const theory::StepVariance& params, FunctionalKind kind, double upper = 1.0);

/// Exact Gaussian covariances w1^T G_{V_N} w2 through sparse solves.
class CovarianceEngine {
public:
    explicit CovarianceEngine(GridSize grid);
    CovarianceEngine(GridSize grid, std::shared_ptr<const lattice::GreenSolver> solver);

    GridSize grid() const { return grid_; }
    const lattice::GreenSolver& solver() const { return *solver_; }
    std::shared_ptr<const lattice::GreenSolver> shared_solver() const { return solver_; }

    double covariance(const LinearFunctional& a, const LinearFunctional& b) const;
    double variance(const LinearFunctional& a) const { return covariance(a, a); }

private:
    GridSize grid_;
    std::shared_ptr<const lattice::GreenSolver> solver_;
};

/// Throws InvalidArgument("grid mismatch") unless both functionals live on
/// the engine's grid.
double exact_cov(const LinearFunctional& a, const LinearFunctional& b, const CovarianceEngine& engine);

}  // namespace igff::exact
