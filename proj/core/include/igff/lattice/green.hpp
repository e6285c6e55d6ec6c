#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include "igff/lattice/box.hpp"

namespace igff::lattice {

/// Normalisation of the Green function: G_B = (pi/2) * expected visits.
inline constexpr double kGreenScale = 1.5707963267948966;

/// Exit distribution of simple random walk started at `source`.
struct HarmonicWeights {
    Site source;
    std::vector<std::pair<Site, double>> weights;

    double total() const;
    /// Weight on z; zero for sites the walk cannot exit through.
    double weight(Site z) const;
    /// sum_z weights(z) * f(z)
    template <typename F>
    double apply(F&& f) const {
        double acc = 0.0;
        for (const auto& [z, w] : weights) acc += w * f(z);
        return acc;
    }
};

/// Q = (2/pi) (I - P) restricted to interior sites, P the SRW transition
/// operator. Rows/columns follow LatticeBox::interior_index.
/// Throws InvalidArgument("empty interior") if the box has no interior site.
Eigen::SparseMatrix<double> laplacian_precision(const LatticeBox& box);

/// Sparse Cholesky factorisation of the precision operator of one box.
///
/// Immutable after construction; concurrent const calls are safe.
class GreenSolver {
public:
    using Factor = Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>>;

    explicit GreenSolver(LatticeBox box);

    const LatticeBox& box() const { return box_; }
    bool has_interior() const { return box_.interior_count() > 0; }
    const Factor& factor() const { return *factor_; }

    /// G_B(u, v). Zero when either site is on the boundary.
    double operator()(Site u, Site v) const;

    /// G_B(., v) over the whole box (flat box indexing, zero on the boundary).
    Eigen::VectorXd column(Site v) const;

    /// G_B applied to a vector given over the whole box; boundary entries of
    /// `rhs` are ignored and the result vanishes on the boundary.
    Eigen::VectorXd apply(const Eigen::VectorXd& rhs) const;

    /// Solve Q x = b on interior coordinates.
    Eigen::VectorXd solve_interior(const Eigen::VectorXd& b) const;

    /// P_v(W hits the boundary first at z). A boundary source exits
    /// immediately, so it gets a point mass on itself.
    HarmonicWeights harmonic_measure(Site v) const;

private:
    void require_site(Site s) const;

    LatticeBox box_;
    std::shared_ptr<const Factor> factor_;
};

double green_function(const LatticeBox& box, Site u, Site v);
HarmonicWeights harmonic_measure(const LatticeBox& box, Site v);

/// Debug dump of the interior Green matrix as `row,col,value` lines.
void write_green_csv(std::ostream& out, const GreenSolver& solver);

}  // namespace igff::lattice
