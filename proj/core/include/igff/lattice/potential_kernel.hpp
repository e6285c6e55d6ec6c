#pragma once

#include <vector>

#include "igff/lattice/box.hpp"
#include "igff/lattice/green.hpp"

namespace igff::lattice {

/// Potential kernel a(w) of planar simple random walk (pi/2 normalisation),
/// tabulated for |w|_inf <= radius.
///
/// Values are G_A(0,0) - G_A(w,0) on the auxiliary box A = [-R, R]^2.
/// For any box B with B - y inside A, the last-exit identity
///   G_B(x,y) = sum_z P_x(exit B at z) a(z-y) - a(y-x)
/// then holds exactly with these values, and a(w) converges to the
/// infinite-volume kernel as R grows.
class PotentialKernel {
public:
    explicit PotentialKernel(int radius);

    int radius() const { return radius_; }
    bool covers(Site w) const;
    /// Throws InvalidArgument("kernel table incomplete") outside the table.
    double operator()(Site w) const;

private:
    int radius_;
    std::vector<double> table_;
};

/// One-off evaluation on an auxiliary box of the given radius.
/// Throws when |w|_inf exceeds the radius.
double potential_kernel(Site w, int radius);

/// Right-hand side of the last-exit representation of G_B(x, y).
double green_via_lawler(const GreenSolver& solver, Site x, Site y, const PotentialKernel& a);
double green_via_lawler(const LatticeBox& box, Site x, Site y, const PotentialKernel& a);

}  // namespace igff::lattice
