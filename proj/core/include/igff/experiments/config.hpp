#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "igff/theory/step_variance.hpp"

namespace igff::experiments {

/// Simulation parameters, read from JSON with the keys below.
struct ExperimentConfig {
    std::vector<int> n_list;
    std::vector<double> sigma_sq;
    std::vector<double> lambda;
    std::vector<double> gammas;  // fractions of gamma*, each in (0, 1)
    int replicates = 1;
    std::uint64_t base_seed = 0;
    double delta = 0.25;
    std::string output_dir = "out";

    theory::StepVariance params() const;

    /// Throws InvalidArgument with a message naming the offending key.
    void validate() const;
};

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Round trip of parse_config (same keys, 17 significant digits).
std::string to_json(const ExperimentConfig& config);

}  // namespace igff::experiments
