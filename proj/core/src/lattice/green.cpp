#include "igff/lattice/green.hpp"

#include <numbers>
#include <ostream>

#include "igff/error.hpp"

namespace igff::lattice {

namespace {

constexpr double kPrecisionScale = 2.0 / std::numbers::pi;

}  // namespace

double HarmonicWeights::total() const {
    double t = 0.0;
    for (const auto& [z, w] : weights) t += w;
    return t;
}

double HarmonicWeights::weight(Site z) const {
    for (const auto& [s, w] : weights) {
        if (s == z) return w;
    }
    return 0.0;
}

Eigen::SparseMatrix<double> laplacian_precision(const LatticeBox& box) {
    const std::size_t n = box.interior_count();
    if (n == 0) throw InvalidArgument("empty interior");

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(5 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const Site s = box.interior_site(i);
        const auto row = static_cast<int>(i);
        entries.emplace_back(row, row, kPrecisionScale);
        for (const Site d : kNeighborOffsets) {
            const Site t = s + d;
            if (box.is_interior(t)) {
                entries.emplace_back(row, static_cast<int>(box.interior_index(t)), -0.25 * kPrecisionScale);
            }
        }
    }
    Eigen::SparseMatrix<double> q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    q.setFromTriplets(entries.begin(), entries.end());
    q.makeCompressed();
    return q;
}

GreenSolver::GreenSolver(LatticeBox box) : box_(box) {
    if (!has_interior()) return;
    auto factor = std::make_shared<Factor>();
    factor->compute(laplacian_precision(box_));
    if (factor->info() != Eigen::Success) {
        throw NumericalError("sparse Cholesky factorisation of the lattice precision failed");
    }
    factor_ = std::move(factor);
}

void GreenSolver::require_site(Site s) const {
    if (!box_.contains(s)) throw InvalidArgument("site not in box: " + to_string(s));
}

Eigen::VectorXd GreenSolver::solve_interior(const Eigen::VectorXd& b) const {
    if (!has_interior()) throw InvalidArgument("empty interior");
    Eigen::VectorXd x = factor_->solve(b);
    if (factor_->info() != Eigen::Success) throw NumericalError("sparse solve failed");
    return x;
}

Eigen::VectorXd GreenSolver::column(Site v) const {
    require_site(v);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(box_.size()));
    if (!box_.is_interior(v)) return out;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(box_.interior_count()));
    e(static_cast<Eigen::Index>(box_.interior_index(v))) = 1.0;
    const Eigen::VectorXd g = solve_interior(e);
    for (std::size_t i = 0; i < box_.interior_count(); ++i) {
        out(static_cast<Eigen::Index>(box_.index(box_.interior_site(i)))) = g(static_cast<Eigen::Index>(i));
    }
    return out;
}

Eigen::VectorXd GreenSolver::apply(const Eigen::VectorXd& rhs) const {
    if (rhs.size() != static_cast<Eigen::Index>(box_.size())) {
        throw InvalidArgument("vector length does not match box");
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(rhs.size());
    if (!has_interior()) return out;
    Eigen::VectorXd b(static_cast<Eigen::Index>(box_.interior_count()));
    for (std::size_t i = 0; i < box_.interior_count(); ++i) {
        b(static_cast<Eigen::Index>(i)) = rhs(static_cast<Eigen::Index>(box_.index(box_.interior_site(i))));
    }
    const Eigen::VectorXd x = solve_interior(b);
    for (std::size_t i = 0; i < box_.interior_count(); ++i) {
        out(static_cast<Eigen::Index>(box_.index(box_.interior_site(i)))) = x(static_cast<Eigen::Index>(i));
    }
    return out;
}

double GreenSolver::operator()(Site u, Site v) const {
    require_site(u);
    require_site(v);
    if (!box_.is_interior(u) || !box_.is_interior(v)) return 0.0;
    return column(v)(static_cast<Eigen::Index>(box_.index(u)));
}

HarmonicWeights GreenSolver::harmonic_measure(Site v) const {
    require_site(v);
    HarmonicWeights hm{v, {}};
    if (!box_.is_interior(v)) {
        hm.weights.emplace_back(v, 1.0);
        return hm;
    }
    // Exit through z means the last step goes from an interior neighbour y to
    // z, so the weight is sum_y g(v,y)/4 with g = (2/pi) G the visit count.
    const Eigen::VectorXd g = column(v);
    for (const Site z : box_.boundary_sites()) {
        double w = 0.0;
        bool reachable = false;
        for (const Site d : kNeighborOffsets) {
            const Site y = z + d;
            if (box_.is_interior(y)) {
                w += g(static_cast<Eigen::Index>(box_.index(y)));
                reachable = true;
            }
        }
        if (reachable) hm.weights.emplace_back(z, 0.25 * kPrecisionScale * w);
    }
    return hm;
}

double green_function(const LatticeBox& box, Site u, Site v) {
    if (!box.contains(u)) throw InvalidArgument("site not in box: " + to_string(u));
    if (!box.contains(v)) throw InvalidArgument("site not in box: " + to_string(v));
    if (!box.is_interior(u) || !box.is_interior(v)) return 0.0;
    return GreenSolver(box)(u, v);
}

HarmonicWeights harmonic_measure(const LatticeBox& box, Site v) {
    if (!box.contains(v)) throw InvalidArgument("site not in box: " + to_string(v));
    if (!box.is_interior(v)) return HarmonicWeights{v, {{v, 1.0}}};
    return GreenSolver(box).harmonic_measure(v);
}

void write_green_csv(std::ostream& out, const GreenSolver& solver) {
    const LatticeBox& box = solver.box();
    out << "row,col,value\n";
    out.precision(17);
    for (std::size_t j = 0; j < box.interior_count(); ++j) {
        const Eigen::VectorXd col = solver.column(box.interior_site(j));
        for (std::size_t i = 0; i < box.interior_count(); ++i) {
            out << i << ',' << j << ',' << col(static_cast<Eigen::Index>(box.index(box.interior_site(i)))) << '\n';
        }
    }
}

}  // namespace igff::lattice
