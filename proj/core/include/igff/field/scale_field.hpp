#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "igff/field/harmonic_cache.hpp"
#include "igff/field/sampler.hpp"
#include "igff/theory/step_variance.hpp"

namespace igff::field {

/// phi_v(lambda): harmonic average of the field over the boundary of [v]_lambda.
double coarse_value(const FieldSample& field, Site v, double lambda, const HarmonicCache& cache);
double coarse_value(const FieldSample& field, Site v, double lambda);

/// psi = sum_i sigma_i (phi_v(lambda_i) - phi_v(lambda_{i-1})) built from one
/// DGFF sample, with lazily memoised coarse values.
class ScaleField {
public:
    ScaleField(FieldSample base, theory::StepVariance params, std::vector<double> psi,
               std::shared_ptr<const HarmonicCache> cache);

    const FieldSample& base() const { return base_; }
    const theory::StepVariance& params() const { return params_; }
    GridSize grid() const { return base_.grid; }
    const std::vector<double>& psi() const { return psi_; }
    double psi(Site v) const { return psi_[base_.grid.box().index(v)]; }

    /// phi_v(lambda), memoised per (site, scale).
    double coarse(Site v, double lambda) const;

    /// psi_v(lambda) = sum_{i : lambda_{i-1} < lambda} sigma_i (phi_v(lambda ^ lambda_i) - phi_v(lambda_{i-1})).
    double psi_coarse(Site v, double lambda) const;

    std::size_t memoised() const;

private:
    FieldSample base_;
    theory::StepVariance params_;
    std::vector<double> psi_;
    std::shared_ptr<const HarmonicCache> cache_;

    struct Memo {
        std::mutex mutex;
        std::map<std::pair<std::size_t, double>, double> values;
    };
    std::unique_ptr<Memo> memo_ = std::make_unique<Memo>();
};

/// Precomputes the exit laws needed for psi on one grid and applies them to
/// samples. Thread-safe after construction.
class PsiBuilder {
public:
    PsiBuilder(GridSize grid, theory::StepVariance params);
    PsiBuilder(GridSize grid, theory::StepVariance params, std::shared_ptr<const HarmonicCache> cache);

    GridSize grid() const { return grid_; }
    const theory::StepVariance& params() const { return params_; }
    const std::shared_ptr<const HarmonicCache>& cache() const { return cache_; }

    /// psi values only (no ScaleField bookkeeping).
    std::vector<double> psi_values(const FieldSample& field) const;

    /// Throws InvalidArgument when the sample lives on another grid.
    ScaleField build(FieldSample field) const;

private:
    GridSize grid_;
    theory::StepVariance params_;
    std::shared_ptr<const HarmonicCache> cache_;
    // per intermediate scale lambda_i < 1, per site
    std::vector<std::vector<std::shared_ptr<const RelativeWeights>>> operators_;
};

ScaleField build_psi(FieldSample field, const theory::StepVariance& params);

}  // namespace igff::field
