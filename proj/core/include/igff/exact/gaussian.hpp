#pragma once

namespace igff::exact {

struct TailBounds {
    double lower;
    double upper;
};

/// Mills-ratio bracket for P(Z >= z), Z ~ N(0, sigma^2):
///   (1 - sigma^2/z^2) s e^{-z^2/2sigma^2} <= P(Z >= z) <= s e^{-z^2/2sigma^2},
/// with s = sigma / (sqrt(2 pi) z). The lower bound is clamped at 0.
/// Throws InvalidArgument for z <= 0 or sigma <= 0.
TailBounds gaussian_tail_bounds(double z, double sigma);

}  // namespace igff::exact
