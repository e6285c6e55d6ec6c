#include "igff/experiments/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "igff/error.hpp"
#include "igff/experiments/io.hpp"
#include "igff/field/sampler.hpp"
#include "igff/field/scale_field.hpp"

namespace igff::experiments {

double RunRecord::log_n2() const { return 2.0 * std::log(static_cast<double>(n)); }

std::vector<std::int64_t> count_high_points(std::span<const double> psi, std::span<const double> thresholds) {
    std::vector<std::int64_t> counts(thresholds.size(), 0);
    for (const double x : psi) {
        for (std::size_t k = 0; k < thresholds.size(); ++k) {
            if (x >= thresholds[k]) ++counts[k];
        }
    }
    return counts;
}

namespace {

RunRecord run_one(const field::DgffSampler& sampler, const field::PsiBuilder& builder, const ExperimentConfig& config,
                  double gamma_star, int replicate, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const field::GridSize grid = sampler.grid();

    RunRecord r;
    r.n = grid.n();
    r.replicate = replicate;
    r.seed = replicate_seed(config.base_seed, replicate);

    field::FieldSample sample = sampler.sample(r.seed);
    const std::vector<double> psi = builder.psi_values(sample);

    const auto best = std::max_element(psi.begin(), psi.end());
    r.max_psi = *best;
    r.argmax = grid.box().site(static_cast<std::size_t>(best - psi.begin()));

    r.gamma_fracs = config.gammas;
    std::vector<double> thresholds;
    for (const double g : config.gammas) {
        r.gamma_abs.push_back(g * gamma_star);
        thresholds.push_back(g * gamma_star * grid.log_n2());
    }
    r.high_counts = count_high_points(psi, thresholds);

    if (options.dump_dir) {
        write_field_dump(*options.dump_dir / field_dump_name(r.n, r.replicate), grid, r.seed, builder.params(), psi);
    }
    if (options.timing) {
        r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
}

}  // namespace

std::vector<RunRecord> run_replicates(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    const theory::StepVariance params = config.params();
    const theory::TheoryProfile profile(params);
    const int threads = std::max(1, options.threads);

    std::vector<RunRecord> records(config.n_list.size() * static_cast<std::size_t>(config.replicates));
    for (std::size_t ni = 0; ni < config.n_list.size(); ++ni) {
        const field::GridSize grid(config.n_list[ni]);
        const field::DgffSampler sampler(grid);
        const field::PsiBuilder builder(grid, params);

        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        const auto worker = [&] {
            for (int rep = next++; rep < config.replicates; rep = next++) {
                try {
                    records[ni * static_cast<std::size_t>(config.replicates) + static_cast<std::size_t>(rep)] =
                        run_one(sampler, builder, config, profile.gamma_star(), rep, options);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }
    return records;
}

}  // namespace igff::experiments
