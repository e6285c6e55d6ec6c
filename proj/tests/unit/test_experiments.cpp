#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include <json.hpp>

#include "igff/error.hpp"
#include "igff/experiments/config.hpp"
#include "igff/experiments/estimates.hpp"
#include "igff/experiments/io.hpp"
#include "igff/experiments/runner.hpp"
#include "igff/field/sampler.hpp"
#include "igff/field/scale_field.hpp"

using namespace igff;
using namespace igff::experiments;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.n_list = {16, 32};
    c.sigma_sq = {2.0, 0.5};
    c.lambda = {0.5, 1.0};
    c.gammas = {0.1, 0.5, 0.9};
    c.replicates = 6;
    c.base_seed = 77;
    return c;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("igff_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

bool same_records(const std::vector<RunRecord>& a, const std::vector<RunRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].n != b[k].n || a[k].replicate != b[k].replicate || a[k].seed != b[k].seed ||
            a[k].max_psi != b[k].max_psi || a[k].argmax != b[k].argmax || a[k].high_counts != b[k].high_counts) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("config parsing and validation") {
    const std::string text = R"({"n_list": [32, 64], "sigma_sq": [2, 0.5], "lambda": [0.5, 1],
        "gammas": [0.25, 0.5], "replicates": 10, "base_seed": 123, "delta": 0.125, "output_dir": "o"})";
    const ExperimentConfig c = parse_config(text);
    CHECK(c.n_list == std::vector<int>{32, 64});
    CHECK(c.base_seed == 123);
    CHECK(c.delta == 0.125);
    CHECK(c.params().size() == 2);
    const ExperimentConfig again = parse_config(to_json(c));
    CHECK(again.n_list == c.n_list);
    CHECK(again.sigma_sq == c.sigma_sq);
    CHECK(again.gammas == c.gammas);
    CHECK(again.output_dir == c.output_dir);

    const auto rejects = [&](const std::string& from, const std::string& to) {
        std::string bad = text;
        bad.replace(bad.find(from), from.size(), to);
        CHECK_THROWS_AS(parse_config(bad), InvalidArgument);
    };
    rejects("\"replicates\": 10", "\"replicates\": 0");
    rejects("[0.25, 0.5]", "[0.25, 1.0]");
    rejects("[0.25, 0.5]", "[0.0, 0.5]");
    rejects("[32, 64]", "[8, 64]");
    rejects("[32, 64]", "[]");
    rejects("[0.5, 1]", "[0.5, 0.9]");
    rejects("\"sigma_sq\": [2, 0.5]", "\"sigma_sq\": [2, -0.5]");
    rejects("\"delta\": 0.125", "\"delta\": 0.7");
    rejects("\"n_list\"", "\"nlist\"");
    CHECK_THROWS_AS(parse_config("{not json"), InvalidArgument);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("high point counting") {
    const std::vector<double> psi{0.0, 1.0, 2.5, -1.0, 2.0, 3.0};
    CHECK(count_high_points(psi, std::vector<double>{0.5, 2.0, 2.6, 10.0}) == std::vector<std::int64_t>{4, 3, 1, 0});
}

TEST_CASE("replicates are deterministic and thread independent") {
    const ExperimentConfig c = small_config();
    RunOptions one;
    one.timing = false;
    RunOptions three = one;
    three.threads = 3;
    const auto a = run_replicates(c, one);
    const auto b = run_replicates(c, one);
    const auto t = run_replicates(c, three);
    CHECK(same_records(a, b));
    CHECK(same_records(a, t));
    CHECK(runs_csv(a) == runs_csv(t));
    CHECK(highpoints_csv(a) == highpoints_csv(t));

    // timed runs agree once the wall_time_s column is masked
    const auto mask = [](const std::string& csv) {
        std::istringstream in(csv);
        std::string out;
        std::string line;
        while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
        return out;
    };
    RunOptions timed;
    timed.threads = 2;
    CHECK(mask(runs_csv(run_replicates(c, timed))) == mask(runs_csv(a)));

    ExperimentConfig single = c;
    single.replicates = 1;
    CHECK(same_records(run_replicates(single, one), run_replicates(single, one)));

    REQUIRE(a.size() == 12);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].n == (k < 6 ? 16 : 32));
        CHECK(a[k].replicate == static_cast<int>(k % 6));
        CHECK(a[k].seed == replicate_seed(77, a[k].replicate));
        CHECK(a[k].wall_time_s == 0.0);
    }
    CHECK(a[0].max_psi != a[6].max_psi);
}

TEST_CASE("record invariants and a naive recount") {
    const ExperimentConfig c = small_config();
    const theory::TheoryProfile theory(c.params());
    const auto records = run_replicates(c);
    for (const auto& r : records) {
        const field::GridSize grid(r.n);
        const field::FieldSample f = field::DgffSampler(grid).sample(r.seed);
        const auto psi = field::build_psi(f, c.params()).psi();

        double best = psi.front();
        for (const double x : psi) best = std::max(best, x);
        CHECK(r.max_psi == best);
        CHECK(psi[grid.box().index(r.argmax)] == best);
        CHECK(r.max_over_log_n2() < 1.5 * theory.effective().sigma_bar[0]);

        for (std::size_t k = 0; k < r.gamma_abs.size(); ++k) {
            std::int64_t naive = 0;
            for (const double x : psi) naive += x >= r.gamma_abs[k] * grid.log_n2() ? 1 : 0;
            CHECK(r.high_counts[k] == naive);
            CHECK((r.max_psi >= r.gamma_abs[k] * grid.log_n2()) == (r.high_counts[k] >= 1));
            CHECK(r.gamma_abs[k] == doctest::Approx(r.gamma_fracs[k] * theory.gamma_star()).epsilon(1e-15));
            if (k > 0) CHECK(r.high_counts[k] <= r.high_counts[k - 1]);
        }
    }
}

TEST_CASE("homogeneous maximum at N = 64") {
    ExperimentConfig c;
    c.n_list = {64};
    c.sigma_sq = {1.0};
    c.lambda = {1.0};
    c.gammas = {0.05, 0.5};
    c.replicates = 20;
    c.base_seed = 1;
    const auto records = run_replicates(c);
    double mean = 0.0;
    for (const auto& r : records) mean += r.max_over_log_n2() / records.size();
    CAPTURE(mean);
    CHECK(mean > 0.7);
    CHECK(mean < 1.0);
    double low = 0.0;
    for (const auto& r : records) low += static_cast<double>(r.high_counts[0]) / records.size();
    CHECK(low >= 32.0 * 32.0);
}

TEST_CASE("trend fit") {
    const std::vector<int> ns{64, 128, 256};
    std::vector<double> ys;
    for (const int n : ns) ys.push_back(1.2 - 0.9 / std::log(n));
    const TrendFit f = fit_inverse_log(ns, ys, {0.01, 0.01, 0.01});
    CHECK(f.intercept == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(f.slope == doctest::Approx(-0.9).epsilon(1e-12));
    CHECK(f.points == 3);

    // two points: intercept = (x2 y1 - x1 y2) / (x2 - x1), so its error is exact
    const double x1 = 1 / std::log(64.0);
    const double x2 = 1 / std::log(256.0);
    const TrendFit two = fit_inverse_log({64, 256}, {0.5, 0.7}, {0.03, 0.04});
    const double se = std::hypot(x2 * 0.03, x1 * 0.04) / (x1 - x2);
    CHECK(two.intercept_se == doctest::Approx(se).epsilon(1e-12));
    CHECK(std::isnan(fit_inverse_log({64}, {0.5}, {0.1}).intercept_se));
}

TEST_CASE("first order and entropy summaries") {
    ExperimentConfig c = small_config();
    c.replicates = 4;
    const theory::TheoryProfile theory(c.params());
    const auto records = run_replicates(c);
    const FirstOrderSummary s = estimate_first_order(records, theory);
    REQUIRE(s.points.size() == 2);
    CHECK(s.points[0].n == 16);
    CHECK(s.points[0].replicates == 4);
    CHECK(s.gamma_star == theory.gamma_star());
    CHECK_FALSE(s.warnings.empty());
    CHECK(std::isfinite(s.fit.intercept));

    std::vector<RunRecord> one_n(records.begin(), records.begin() + 4);
    CHECK_THROWS_AS(estimate_first_order(one_n, theory), InvalidArgument);

    const EntropySummary e = estimate_entropy(records, 0.5, theory);
    CHECK(e.entropy == doctest::Approx(theory.entropy(0.5 * theory.gamma_star())));
    CHECK(e.points.size() == 2);

    std::vector<RunRecord> zeroed = records;
    for (auto& r : zeroed) {
        if (r.n == 16) std::fill(r.high_counts.begin(), r.high_counts.end(), 0);
    }
    const EntropySummary z = estimate_entropy(zeroed, 0.5, theory);
    CHECK(z.points[0].excluded);
    CHECK_FALSE(z.points[1].excluded);
    CHECK(z.fit.points == 1);
    CHECK_FALSE(z.warnings.empty());
}

TEST_CASE("predicted exceedance band") {
    const theory::TheoryProfile homo(theory::StepVariance::homogeneous());
    for (const int n : {32, 64}) {
        for (const double g : {0.2, 0.5, 0.8}) {
            const ExceedanceBand b = predicted_exceedance(homo, n, g);
            CHECK(b.lower >= 0.0);
            CHECK(b.lower <= b.upper);
            CHECK(b.center >= b.lower);
            CHECK(b.center <= b.upper);
        }
    }
    ExperimentConfig c;
    c.n_list = {64};
    c.sigma_sq = {1.0};
    c.lambda = {1.0};
    c.gammas = {0.5};
    c.replicates = 20;
    c.base_seed = 1;
    double mean = 0.0;
    for (const auto& r : run_replicates(c)) mean += static_cast<double>(r.high_counts[0]) / c.replicates;
    const ExceedanceBand b = predicted_exceedance(homo, 64, 0.5);
    CHECK(mean >= b.lower / 1e3);
    CHECK(mean <= b.upper * 1e3);

    const ExceedanceBand big = predicted_exceedance(homo, 256, 0.5);
    CHECK(std::abs(std::log(big.center) / std::log(256.0 * 256.0) - homo.entropy(0.5)) <= 0.2);
}

TEST_CASE("same effective variance, same first order") {
    // sigma^2 = (0.5, 2) concavifies to the constant 1.25
    ExperimentConfig a;
    a.n_list = {64, 128, 256};
    a.sigma_sq = {0.5, 2.0};
    a.lambda = {0.5, 1.0};
    a.gammas = {0.5};
    a.replicates = 50;
    a.base_seed = 1;
    ExperimentConfig b = a;
    b.sigma_sq = {1.25};
    b.lambda = {1.0};
    const auto fa = estimate_first_order(run_replicates(a), theory::TheoryProfile(a.params()));
    const auto fb = estimate_first_order(run_replicates(b), theory::TheoryProfile(b.params()));
    const double joint = std::hypot(fa.fit.intercept_se, fb.fit.intercept_se);
    CAPTURE(fa.fit.intercept);
    CAPTURE(fb.fit.intercept);
    CHECK(std::abs(fa.fit.intercept - fb.fit.intercept) <= 2.0 * joint);
}

TEST_CASE("output files") {
    const ExperimentConfig c = small_config();
    RunOptions o;
    o.timing = false;
    const auto records = run_replicates(c, o);
    const fs::path dir = scratch("outputs");
    write_outputs(dir, c, records);

    std::istringstream runs(read_text(dir / "runs.csv"));
    std::string line;
    std::getline(runs, line);
    CHECK(line == "N,replicate,seed,max_psi,max_over_logN2,argmax_x,argmax_y,wall_time_s");
    std::istringstream high(read_text(dir / "highpoints.csv"));
    std::getline(high, line);
    CHECK(line == "N,replicate,gamma_frac,gamma_abs,count,log1p_count_over_logN2");
    int rows = 0;
    while (std::getline(high, line)) ++rows;
    CHECK(rows == 12 * 3);

    const auto back = read_records(dir);
    REQUIRE(back.size() == records.size());
    for (std::size_t k = 0; k < back.size(); ++k) {
        CHECK(back[k].high_counts == records[k].high_counts);
        CHECK(back[k].argmax == records[k].argmax);
        CHECK(back[k].max_psi == doctest::Approx(records[k].max_psi).epsilon(1e-11));
    }
    CHECK(read_theory_params(dir / "theory.json") == c.params());
    CHECK(parse_config(read_text(dir / "config.json")).n_list == c.n_list);

    const fs::path again = scratch("outputs_again");
    RunOptions threaded = o;
    threaded.threads = 2;
    write_outputs(again, c, run_replicates(c, threaded));
    for (const char* f : {"runs.csv", "highpoints.csv", "theory.json", "config.json"}) {
        CHECK(read_text(dir / f) == read_text(again / f));
    }

    write_text(dir / "highpoints.csv", "N,replicate\n");
    CHECK_THROWS_AS(read_records(dir), IoError);
    CHECK_THROWS_AS(read_records(dir / "missing"), IoError);
    CHECK_THROWS_AS(write_outputs("/proc/igff_cannot_write", c, records), IoError);
}

TEST_CASE("theory document") {
    const theory::TheoryProfile t(theory::StepVariance::from_sigma_sq({2.0, 0.5}, {0.5, 1.0}));
    const auto doc = nlohmann::json::parse(theory_json(t, {0.5, 0.95}));
    CHECK(doc["gamma_star"].get<double>() == std::stod(format_real(t.gamma_star())));
    CHECK(doc["effective_variance"]["jumps"].size() == 3);
    CHECK(doc["effective_variance"]["values"].size() == 2);
    CHECK(doc["critical_levels"].size() == 3);
    CHECK(doc["entropy"].size() == 2);
    CHECK(doc["entropy"][1]["value"].get<double>() == doctest::Approx(t.entropy(0.95)).epsilon(1e-11));
    CHECK(doc["paths"]["s"].size() == 101);
    CHECK(doc["paths"]["max"].size() == 101);
    CHECK(doc["paths"]["high_points"][0]["values"].size() == 101);
    CHECK(doc["thick_point_dimension"]["label"] == "conjecture");
    for (const auto& x : doc["paths"]["max"]) CHECK(std::stod(format_real(x.get<double>())) == x.get<double>());
    CHECK(format_real(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("field dump") {
    const field::GridSize grid(8);
    const theory::StepVariance p = theory::StepVariance::from_sigma_sq({2.0, 0.5}, {0.5, 1.0});
    const auto psi = field::build_psi(field::sample_dgff(grid, 4), p).psi();
    const fs::path dir = scratch("dump");
    write_field_dump(dir / field_dump_name(8, 3), grid, 4, p, psi);
    CHECK(field_dump_name(8, 3) == "psi_N8_r3.csv");
    std::istringstream in(read_text(dir / "psi_N8_r3.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "N,seed,M,sigma,lambda");
    std::getline(in, line);
    CHECK(line.rfind("8,4,2,", 0) == 0);
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 9);
    CHECK_THROWS_AS(write_field_dump(dir / "x.csv", field::GridSize(9), 4, p, psi), InvalidArgument);
}
