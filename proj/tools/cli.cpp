#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "igff/error.hpp"
#include "igff/exact/checks.hpp"
#include "igff/experiments/config.hpp"
#include "igff/experiments/estimates.hpp"
#include "igff/experiments/io.hpp"
#include "igff/experiments/runner.hpp"
#include "igff/theory/profile.hpp"

namespace igff::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

theory::StepVariance params_from_json(const json& j) {
    try {
        return theory::StepVariance::from_sigma_sq(j.at("sigma_sq").get<std::vector<double>>(),
                                                   j.at("lambda").get<std::vector<double>>());
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("parameters: ") + e.what());
    }
}

json parse_json_file(const fs::path& path) {
    const std::string text = experiments::read_text(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(path.string() + ": malformed JSON: " + e.what());
    }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        experiments::write_text(path, text);
    }
}

int cmd_theory(const std::string& input, const std::string& output, std::ostream& out) {
    const json j = parse_json_file(input);
    const theory::TheoryProfile profile(params_from_json(j));
    const auto gammas = j.contains("gammas") ? j.at("gammas").get<std::vector<double>>() : std::vector<double>{};
    for (const double g : gammas) {
        if (!(g >= 0.0 && g < profile.gamma_star())) {
            throw InvalidArgument("gammas must lie in [0, gamma*) = [0, " + experiments::format_real(profile.gamma_star()) +
                                  ")");
        }
    }
    emit(experiments::theory_json(profile, gammas), output, out);
    return kOk;
}

struct VerifyOptions {
    std::vector<int> n_list{32, 64, 128};
    double delta = 0.25;
    std::string params_path;
    std::string report_path;
    int tuples = 200;
    std::uint64_t seed = 1;
};

json check_row(const std::string& check, int n, double deviation, bool pass) {
    return {{"check", check}, {"N", n}, {"max_abs_deviation", std::stod(experiments::format_real(deviation))},
            {"pass", pass}};
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
    const theory::StepVariance params =
        o.params_path.empty() ? theory::StepVariance::homogeneous() : params_from_json(parse_json_file(o.params_path));
    if (o.n_list.empty()) throw InvalidArgument("--n-list is empty");
    std::vector<int> ns = o.n_list;
    std::sort(ns.begin(), ns.end());
    const double rep_lambda = params.size() > 1 ? params.lambda().front() : 0.5;

    json rows = json::array();
    bool all_pass = true;
    const auto record = [&](json row) {
        all_pass = all_pass && row.at("pass").get<bool>();
        rows.push_back(std::move(row));
    };

    std::optional<double> first_dev;
    std::optional<double> first_rep;
    for (const int n : ns) {
        const field::GridSize grid(n);
        const field::HarmonicCache cache(grid);
        const exact::CovarianceEngine engine(grid);
        err << "verify: N=" << n << '\n';

        const exact::VarianceReport var = exact::check_variance_bounds(cache, params, o.delta);
        if (!first_dev) first_dev = var.max_abs_deviation();
        record(check_row("variance_growth", n, var.max_abs_deviation(),
                         var.max_abs_deviation() <= 2.0 * *first_dev));
        record(check_row("variance_upper_bound", n, var.all_max - var.center_deviation,
                         var.all_max <= var.center_deviation + 1.0));

        const std::vector<lattice::Site> sites = {grid.center(), {n / 4, n / 3}, {1, 1}, {n / 2, 1}};
        const double identity = exact::green_difference_identity_error(engine, cache, params, sites);
        record(check_row("green_difference_identity", n, identity, identity <= 1e-8));

        const exact::RepresentativeReport rep =
            exact::check_representative_bound(engine, cache, params, rep_lambda, exact::representative_sites(grid));
        if (!first_rep) first_rep = rep.max_variance;
        record(check_row("representative_bound", n, rep.max_variance, rep.max_variance <= 2.0 * *first_rep));

        const exact::IndependenceReport ind = exact::check_independence(grid, params, o.tuples, o.seed);
        record(check_row("independence", n, ind.max_abs_covariance, ind.max_abs_covariance <= 1e-8));
        record(check_row("independence_disjoint_shells", n, ind.max_abs_disjoint_shells,
                         ind.max_abs_disjoint_shells <= 1e-8));
    }
    emit(rows.dump(2) + "\n", o.report_path, out);
    return all_pass ? kOk : kChecksFailed;
}

struct SimulateOptions {
    std::string config_path;
    std::string out_dir;
    int threads = 1;
    std::optional<std::uint64_t> seed;
    bool no_timing = false;
    bool dump_fields = false;
};

std::string summaries_json(const std::vector<experiments::RunRecord>& records, const theory::TheoryProfile& profile,
                           const std::vector<double>& gammas) {
    json doc = json::object();
    std::set<int> ns;
    for (const auto& r : records) ns.insert(r.n);
    if (ns.size() >= 2) {
        doc["first_order"] = json::parse(experiments::first_order_json(experiments::estimate_first_order(records, profile)));
    }
    std::vector<experiments::EntropySummary> entropy;
    for (const double g : gammas) entropy.push_back(experiments::estimate_entropy(records, g, profile));
    doc["entropy"] = json::parse(experiments::entropy_json(entropy));
    return doc.dump(2) + "\n";
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
    experiments::ExperimentConfig config = experiments::load_config(o.config_path);
    if (o.seed) config.base_seed = *o.seed;
    if (!o.out_dir.empty()) config.output_dir = o.out_dir;
    config.validate();

    experiments::RunOptions run;
    run.threads = o.threads;
    run.timing = !o.no_timing;
    const fs::path dir(config.output_dir);
    if (o.dump_fields) {
        std::error_code ec;
        fs::create_directories(dir / "fields", ec);
        if (ec) throw IoError("cannot create " + (dir / "fields").string());
        run.dump_dir = dir / "fields";
    }
    err << "simulate: " << config.n_list.size() << " grid sizes x " << config.replicates << " replicates, "
        << std::max(1, o.threads) << " threads\n";
    const auto records = experiments::run_replicates(config, run);
    experiments::write_outputs(dir, config, records);

    const theory::TheoryProfile profile(config.params());
    const std::string summary = summaries_json(records, profile, config.gammas);
    experiments::write_text(dir / "summary.json", summary);
    out << summary;
    return kOk;
}

int cmd_entropy(const std::string& in_dir, const std::string& output, std::ostream& out) {
    const fs::path dir(in_dir);
    const auto records = experiments::read_records(dir);
    const theory::TheoryProfile profile(experiments::read_theory_params(dir / "theory.json"));
    std::vector<double> gammas;
    if (!records.empty()) gammas = records.front().gamma_fracs;
    emit(summaries_json(records, profile, gammas), output, out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scale-inhomogeneous lattice Gaussian free field laboratory", "igff"};
    app.require_subcommand(1);

    std::string theory_in;
    std::string theory_out;
    auto* theory = app.add_subcommand("theory", "closed-form profile for one parameter set");
    theory->add_option("input", theory_in, "JSON with sigma_sq, lambda and optional gammas")->required();
    theory->add_option("-o,--out", theory_out, "write to a file instead of stdout");

    VerifyOptions verify_opts;
    auto* verify = app.add_subcommand("verify", "exact covariance checks");
    verify->add_option("--n-list", verify_opts.n_list, "grid sizes")->delimiter(',');
    verify->add_option("--delta", verify_opts.delta, "bulk margin as a fraction of N")->check(CLI::Range(1e-9, 0.5));
    verify->add_option("--params", verify_opts.params_path, "JSON with sigma_sq and lambda (default homogeneous)");
    verify->add_option("--report", verify_opts.report_path, "write the report to a file instead of stdout");
    verify->add_option("--tuples", verify_opts.tuples, "independence tuples per N")->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_opts.seed, "seed of the independence tuples");

    SimulateOptions sim_opts;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo replicates");
    simulate->add_option("--config", sim_opts.config_path, "experiment config JSON")->required();
    simulate->add_option("--out", sim_opts.out_dir, "output directory (overrides output_dir)");
    simulate->add_option("--threads", sim_opts.threads, "worker threads")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_opts.seed, "override base_seed");
    simulate->add_flag("--no-timing", sim_opts.no_timing, "write wall_time_s = 0 (byte-stable outputs)");
    simulate->add_flag("--dump-fields", sim_opts.dump_fields, "write every psi field under <out>/fields");

    std::string entropy_in;
    std::string entropy_out;
    auto* entropy = app.add_subcommand("entropy", "estimates from a finished simulate run");
    entropy->add_option("--in", entropy_in, "directory written by simulate")->required();
    entropy->add_option("-o,--out", entropy_out, "write to a file instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "igff: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (*theory) return cmd_theory(theory_in, theory_out, out);
        if (*verify) return cmd_verify(verify_opts, out, err);
        if (*simulate) return cmd_simulate(sim_opts, out, err);
        if (*entropy) return cmd_entropy(entropy_in, entropy_out, out);
    } catch (const InvalidArgument& e) {
        err << "igff: " << e.what() << '\n';
        return kConfigError;
    } catch (const NumericalError& e) {
        err << "igff: numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const IoError& e) {
        err << "igff: " << e.what() << '\n';
        return kIoError;
    }
    return kConfigError;
}

}  // namespace igff::cli
