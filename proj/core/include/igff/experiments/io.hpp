#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "igff/experiments/estimates.hpp"
#include "igff/experiments/runner.hpp"
#include "igff/field/geometry.hpp"
#include "igff/theory/profile.hpp"

namespace igff::experiments {

inline constexpr const char* kRunsHeader = "N,replicate,seed,max_psi,max_over_logN2,argmax_x,argmax_y,wall_time_s";
inline constexpr const char* kHighpointsHeader = "N,replicate,gamma_frac,gamma_abs,count,log1p_count_over_logN2";
inline constexpr const char* kFieldDumpHeader = "N,seed,M,sigma,lambda";

/// Shortest decimal form of x rounded to `digits` significant digits.
std::string format_real(double x, int digits = 12);

std::string runs_csv(const std::vector<RunRecord>& records);
std::string highpoints_csv(const std::vector<RunRecord>& records);

/// Profile serialisation; reals carry 12 significant digits, paths are
/// sampled at `path_points` equally spaced s in [0, 1].
std::string theory_json(const theory::TheoryProfile& profile, const std::vector<double>& gammas,
                        int path_points = 101);

/// Parameters stored in a theory.json document.
theory::StepVariance read_theory_params(const std::filesystem::path& path);

/// Records rebuilt from runs.csv and highpoints.csv of one output directory.
std::vector<RunRecord> read_records(const std::filesystem::path& dir);

std::string first_order_json(const FirstOrderSummary& summary);
std::string entropy_json(const std::vector<EntropySummary>& summaries);

std::string field_dump_name(int n, int replicate);

/// Header line, one metadata line (sigma and lambda ';'-separated), then the
/// N+1 rows of psi.
void write_field_dump(const std::filesystem::path& path, field::GridSize grid, std::uint64_t seed,
                      const theory::StepVariance& params, std::span<const double> psi);

/// Writes runs.csv, highpoints.csv, theory.json and config.json into dir.
void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const std::vector<RunRecord>& records);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace igff::experiments
