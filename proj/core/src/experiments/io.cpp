#include "igff/experiments/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "igff/error.hpp"

namespace igff::experiments {

using nlohmann::json;

namespace {

double rounded(double x, int digits = 12) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

json reals(const std::vector<double>& xs) {
    json out = json::array();
    for (const double x : xs) out.push_back(rounded(x));
    return out;
}

json real_or_null(double x) { return std::isfinite(x) ? json(rounded(x)) : json(nullptr); }

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

template <typename F>
void for_each_row(const std::filesystem::path& path, const char* header, std::size_t columns, F&& f) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw IoError(path.string() + ":1: unexpected header");
    }
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != columns) throw IoError(path.string() + ":" + std::to_string(lineno) + ": wrong column count");
        try {
            f(cells);
        } catch (const std::logic_error&) {
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
        }
    }
}

json per_n_json(const std::vector<PerN>& points) {
    json out = json::array();
    for (const auto& p : points) {
        out.push_back({{"N", p.n},
                       {"replicates", p.replicates},
                       {"mean", real_or_null(p.mean)},
                       {"std_error", real_or_null(p.std_error)},
                       {"excluded", p.excluded}});
    }
    return out;
}

json fit_json(const TrendFit& f) {
    return {{"slope", real_or_null(f.slope)},
            {"intercept", real_or_null(f.intercept)},
            {"intercept_se", real_or_null(f.intercept_se)},
            {"points", f.points}};
}

}  // namespace

std::string format_real(double x, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string runs_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << kRunsHeader << '\n';
    for (const auto& r : records) {
        out << r.n << ',' << r.replicate << ',' << r.seed << ',' << format_real(r.max_psi) << ','
            << format_real(r.max_over_log_n2()) << ',' << r.argmax.x << ',' << r.argmax.y << ','
            << format_real(r.wall_time_s, 6) << '\n';
    }
    return out.str();
}

std::string highpoints_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << kHighpointsHeader << '\n';
    for (const auto& r : records) {
        for (std::size_t k = 0; k < r.high_counts.size(); ++k) {
            out << r.n << ',' << r.replicate << ',' << format_real(r.gamma_fracs[k]) << ','
                << format_real(r.gamma_abs[k]) << ',' << r.high_counts[k] << ','
                << format_real(std::log1p(static_cast<double>(r.high_counts[k])) / r.log_n2()) << '\n';
        }
    }
    return out.str();
}

std::string theory_json(const theory::TheoryProfile& profile, const std::vector<double>& gammas, int path_points) {
    const auto& params = profile.params();
    const auto& eff = profile.effective();
    const theory::StepFunction hull = eff.sigma_bar_sq_fn();

    json hull_at_jumps = json::array();
    for (const double l : eff.jumps) hull_at_jumps.push_back(rounded(hull.integral(0.0, l)));

    std::vector<double> s(static_cast<std::size_t>(path_points));
    for (int k = 0; k < path_points; ++k) s[static_cast<std::size_t>(k)] = static_cast<double>(k) / (path_points - 1);

    const auto sample = [&](const theory::OptimalPath& p) {
        json out = json::array();
        for (const double x : s) out.push_back(rounded(p(x)));
        return out;
    };
    json j_curve = json::array();
    json j_hull = json::array();
    for (const double x : s) {
        j_curve.push_back(rounded(params.variance_fn().integral(0.0, x)));
        j_hull.push_back(rounded(hull.integral(0.0, x)));
    }

    json entropy = json::array();
    json dimension = json::array();
    json high_paths = json::array();
    for (const double g : gammas) {
        entropy.push_back({{"gamma", rounded(g)}, {"value", rounded(profile.entropy(g))}});
        dimension.push_back({{"gamma", rounded(g)}, {"value", rounded(profile.thick_point_dimension(g))}});
        high_paths.push_back({{"gamma", rounded(g)}, {"values", sample(profile.high_points_path(g))}});
    }

    const json doc = {
        {"params", {{"sigma_sq", reals(params.sigma_sq())}, {"lambda", reals(params.lambda())}}},
        {"effective_variance",
         {{"jumps", reals(eff.jumps)},
          {"values", reals(eff.sigma_bar_sq())},
          {"sigma_bar", reals(eff.sigma_bar)},
          {"hull_at_jumps", hull_at_jumps}}},
        {"gamma_star", rounded(profile.gamma_star())},
        {"gamma_star_hull", rounded(profile.gamma_star_hull())},
        {"critical_levels", reals(profile.critical_levels())},
        {"entropy", entropy},
        {"paths", {{"s", reals(s)}, {"max", sample(profile.max_path())}, {"high_points", high_paths}}},
        {"thick_point_dimension", {{"label", "conjecture"}, {"values", dimension}}},
        {"series", {{"s", reals(s)}, {"J_sigma_sq", j_curve}, {"hull", j_hull}}},
    };
    return doc.dump(2) + "\n";
}

theory::StepVariance read_theory_params(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_text(path));
        return theory::StepVariance::from_sigma_sq(j.at("params").at("sigma_sq").get<std::vector<double>>(),
                                                   j.at("params").at("lambda").get<std::vector<double>>());
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

std::vector<RunRecord> read_records(const std::filesystem::path& dir) {
    std::vector<RunRecord> records;
    std::map<std::pair<int, int>, std::size_t> index;
    for_each_row(dir / "runs.csv", kRunsHeader, 8, [&](const std::vector<std::string>& c) {
        RunRecord r;
        r.n = std::stoi(c[0]);
        r.replicate = std::stoi(c[1]);
        r.seed = std::stoull(c[2]);
        r.max_psi = std::stod(c[3]);
        r.argmax = {std::stoi(c[5]), std::stoi(c[6])};
        r.wall_time_s = std::stod(c[7]);
        index[{r.n, r.replicate}] = records.size();
        records.push_back(std::move(r));
    });
    for_each_row(dir / "highpoints.csv", kHighpointsHeader, 6, [&](const std::vector<std::string>& c) {
        const auto it = index.find({std::stoi(c[0]), std::stoi(c[1])});
        if (it == index.end()) throw std::invalid_argument("row without a run");
        auto& r = records[it->second];
        r.gamma_fracs.push_back(std::stod(c[2]));
        r.gamma_abs.push_back(std::stod(c[3]));
        r.high_counts.push_back(std::stoll(c[4]));
    });
    return records;
}

std::string first_order_json(const FirstOrderSummary& s) {
    const json doc = {{"gamma_star", rounded(s.gamma_star)},
                      {"per_n", per_n_json(s.points)},
                      {"fit", fit_json(s.fit)},
                      {"increasing", s.increasing},
                      {"warnings", s.warnings}};
    return doc.dump(2) + "\n";
}

std::string entropy_json(const std::vector<EntropySummary>& summaries) {
    json out = json::array();
    for (const auto& s : summaries) {
        out.push_back({{"gamma_frac", rounded(s.gamma_frac)},
                       {"gamma", rounded(s.gamma_abs)},
                       {"entropy", rounded(s.entropy)},
                       {"per_n", per_n_json(s.points)},
                       {"fit", fit_json(s.fit)},
                       {"warnings", s.warnings}});
    }
    return out.dump(2) + "\n";
}

std::string field_dump_name(int n, int replicate) {
    return "psi_N" + std::to_string(n) + "_r" + std::to_string(replicate) + ".csv";
}

void write_field_dump(const std::filesystem::path& path, field::GridSize grid, std::uint64_t seed,
                      const theory::StepVariance& params, std::span<const double> psi) {
    if (psi.size() != grid.sites()) throw InvalidArgument("psi size does not match grid");
    std::ostringstream out;
    const auto joined = [](const std::vector<double>& xs) {
        std::string s;
        for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ";" : "") + format_real(xs[k], 17);
        return s;
    };
    out << kFieldDumpHeader << '\n'
        << grid.n() << ',' << seed << ',' << params.size() << ',' << joined(params.sigma()) << ','
        << joined(params.lambda()) << '\n';
    const auto side = static_cast<std::size_t>(grid.side());
    for (std::size_t y = 0; y < side; ++y) {
        for (std::size_t x = 0; x < side; ++x) out << (x ? "," : "") << format_real(psi[y * side + x], 17);
        out << '\n';
    }
    write_text(path, out.str());
}

void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const std::vector<RunRecord>& records) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const theory::TheoryProfile profile(config.params());
    std::vector<double> gammas;
    for (const double g : config.gammas) gammas.push_back(g * profile.gamma_star());
    write_text(dir / "runs.csv", runs_csv(records));
    write_text(dir / "highpoints.csv", highpoints_csv(records));
    write_text(dir / "theory.json", theory_json(profile, gammas));
    write_text(dir / "config.json", to_json(config));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace igff::experiments
