#include "igff/field/scale_field.hpp"

#include <algorithm>

#include "igff/error.hpp"

namespace igff::field {

namespace {

double apply_weights(const FieldSample& field, Site v, const RelativeWeights& rel) {
    const auto side = static_cast<std::ptrdiff_t>(field.grid.side());
    const auto base = static_cast<std::ptrdiff_t>(v.y) * side + v.x;
    double acc = 0.0;
    for (const auto& [d, w] : rel.weights) acc += w * field.values[static_cast<std::size_t>(base + d.y * side + d.x)];
    return acc;
}

}  // namespace

double coarse_value(const FieldSample& field, Site v, double lambda, const HarmonicCache& cache) {
    if (cache.grid() != field.grid) throw InvalidArgument("grid mismatch between field and cache");
    return apply_weights(field, v, *cache.weights(v, lambda));
}

double coarse_value(const FieldSample& field, Site v, double lambda) {
    return coarse_value(field, v, lambda, HarmonicCache(field.grid));
}

ScaleField::ScaleField(FieldSample base, theory::StepVariance params, std::vector<double> psi,
                       std::shared_ptr<const HarmonicCache> cache)
    : base_(std::move(base)), params_(std::move(params)), psi_(std::move(psi)), cache_(std::move(cache)) {
    if (psi_.size() != base_.values.size()) throw InvalidArgument("psi size does not match grid");
    if (!cache_ || cache_->grid() != base_.grid) throw InvalidArgument("grid mismatch between field and cache");
}

double ScaleField::coarse(Site v, double lambda) const {
    const std::pair<std::size_t, double> key{base_.grid.box().index(v), lambda};
    {
        const std::lock_guard lock(memo_->mutex);
        if (const auto it = memo_->values.find(key); it != memo_->values.end()) return it->second;
    }
    const double value = coarse_value(base_, v, lambda, *cache_);
    const std::lock_guard lock(memo_->mutex);
    memo_->values.emplace(key, value);
    return value;
}

double ScaleField::psi_coarse(Site v, double lambda) const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("scale outside [0, 1]");
    double acc = 0.0;
    for (std::size_t i = 1; i <= params_.size(); ++i) {
        const double lo = params_.scale(i - 1);
        if (!(lo < lambda)) break;
        const double hi = std::min(lambda, params_.scale(i));
        acc += params_.sigma()[i - 1] * (coarse(v, hi) - coarse(v, lo));
    }
    return acc;
}

std::size_t ScaleField::memoised() const {
    const std::lock_guard lock(memo_->mutex);
    return memo_->values.size();
}

PsiBuilder::PsiBuilder(GridSize grid, theory::StepVariance params)
    : PsiBuilder(grid, std::move(params), std::make_shared<const HarmonicCache>(grid)) {}

PsiBuilder::PsiBuilder(GridSize grid, theory::StepVariance params, std::shared_ptr<const HarmonicCache> cache)
    : grid_(grid), params_(std::move(params)), cache_(std::move(cache)) {
    if (!cache_ || cache_->grid() != grid_) throw InvalidArgument("grid mismatch between builder and cache");
    const LatticeBox box = grid_.box();
    for (std::size_t i = 1; i < params_.size(); ++i) {
        const double lambda = params_.scale(i);
        std::vector<std::shared_ptr<const RelativeWeights>> op(box.size());
        for (std::size_t k = 0; k < box.size(); ++k) op[k] = cache_->weights(box.site(k), lambda);
        operators_.push_back(std::move(op));
    }
}

std::vector<double> PsiBuilder::psi_values(const FieldSample& field) const {
    if (field.grid != grid_) throw InvalidArgument("grid mismatch between field and parameters");
    const LatticeBox box = grid_.box();
    const std::size_t m = params_.size();
    const auto& sigma = params_.sigma();
    std::vector<double> psi(box.size());
    for (std::size_t k = 0; k < box.size(); ++k) {
        const Site v = box.site(k);
        double previous = 0.0;  // phi_v(0) = 0 under the Dirichlet condition
        double acc = 0.0;
        for (std::size_t i = 1; i <= m; ++i) {
            const double current = i == m ? field.values[k] : apply_weights(field, v, *operators_[i - 1][k]);
            acc += sigma[i - 1] * (current - previous);
            previous = current;
        }
        psi[k] = acc;
    }
    return psi;
}

ScaleField PsiBuilder::build(FieldSample field) const {
    std::vector<double> psi = psi_values(field);
    return ScaleField(std::move(field), params_, std::move(psi), cache_);
}

ScaleField build_psi(FieldSample field, const theory::StepVariance& params) {
    const GridSize grid = field.grid;
    return PsiBuilder(grid, params).build(std::move(field));
}

}  // namespace igff::field
