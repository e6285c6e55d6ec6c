#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "igff/theory/step_variance.hpp"

namespace support {

/// Random step variance with 1..max_steps steps, sigma^2 in [0.2, 3] and
/// scale gaps of at least 0.05.
inline igff::theory::StepVariance random_params(std::mt19937_64& rng, int max_steps = 4) {
    std::uniform_int_distribution<int> steps(1, max_steps);
    std::uniform_real_distribution<double> var(0.2, 3.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int m = steps(rng);
    std::vector<double> lambda;
    while (true) {
        lambda.clear();
        for (int i = 0; i + 1 < m; ++i) lambda.push_back(unit(rng));
        std::sort(lambda.begin(), lambda.end());
        lambda.push_back(1.0);
        double prev = 0.0;
        bool ok = true;
        for (const double l : lambda) {
            ok = ok && l - prev >= 0.05;
            prev = l;
        }
        if (ok) break;
    }
    std::vector<double> s2;
    for (int i = 0; i < m; ++i) s2.push_back(var(rng));
    return igff::theory::StepVariance::from_sigma_sq(s2, lambda);
}

}  // namespace support
