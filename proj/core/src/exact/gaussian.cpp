#include "igff/exact/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "igff/error.hpp"

namespace igff::exact {

TailBounds gaussian_tail_bounds(double z, double sigma) {
    if (!(z > 0.0) || !std::isfinite(z)) throw InvalidArgument("tail bound needs z > 0");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("tail bound needs sigma > 0");
    const double r = z / sigma;
    const double upper = std::exp(-0.5 * r * r) / (std::sqrt(2.0 * std::numbers::pi) * r);
    const double lower = std::max(0.0, (1.0 - 1.0 / (r * r)) * upper);
    return {lower, upper};
}

}  // namespace igff::exact
