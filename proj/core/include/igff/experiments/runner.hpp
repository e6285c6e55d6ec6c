#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "igff/experiments/config.hpp"
#include "igff/lattice/box.hpp"
#include "igff/theory/profile.hpp"

namespace igff::experiments {

/// One replicate at one grid size.
struct RunRecord {
    int n = 0;
    int replicate = 0;
    std::uint64_t seed = 0;
    double max_psi = 0.0;
    lattice::Site argmax;
    std::vector<double> gamma_fracs;           // fractions of gamma*
    std::vector<double> gamma_abs;             // gamma_frac * gamma*
    std::vector<std::int64_t> high_counts;     // |{v : psi_v >= gamma_abs log N^2}|
    double wall_time_s = 0.0;

    double log_n2() const;
    double max_over_log_n2() const { return max_psi / log_n2(); }
};

struct RunOptions {
    int threads = 1;
    bool timing = true;  // false writes wall_time_s = 0 for byte-stable output
    std::optional<std::filesystem::path> dump_dir;
};

/// Seed of a replicate: base_seed + replicate. Grid sizes sharing a seed draw
/// from separate streams.
constexpr std::uint64_t replicate_seed(std::uint64_t base_seed, int replicate) {
    return base_seed + static_cast<std::uint64_t>(replicate);
}

/// Counts of psi >= threshold_k for every k in one pass over psi.
std::vector<std::int64_t> count_high_points(std::span<const double> psi, std::span<const double> thresholds);

/// Records ordered by (N in n_list order, replicate); independent of threads.
std::vector<RunRecord> run_replicates(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace igff::experiments
