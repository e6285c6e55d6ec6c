#include "igff/experiments/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "igff/error.hpp"

namespace igff::experiments {

using nlohmann::json;

namespace {

template <typename T>
T required(const json& j, const char* key) {
    if (!j.contains(key)) throw InvalidArgument(std::string("config: missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidArgument(std::string("config: key '") + key + "' has the wrong type");
    }
}

template <typename T>
T optional(const json& j, const char* key, T fallback) {
    return j.contains(key) ? required<T>(j, key) : fallback;
}

}  // namespace

theory::StepVariance ExperimentConfig::params() const { return theory::StepVariance::from_sigma_sq(sigma_sq, lambda); }

void ExperimentConfig::validate() const {
    if (n_list.empty()) throw InvalidArgument("config: n_list is empty");
    for (const int n : n_list) {
        if (n < 16) throw InvalidArgument("config: n_list entries must be >= 16");
    }
    if (replicates < 1) throw InvalidArgument("config: replicates must be >= 1");
    for (const double g : gammas) {
        if (!(g > 0.0 && g < 1.0)) throw InvalidArgument("config: gammas must lie in (0, 1)");
    }
    if (!(delta > 0.0 && delta <= 0.5)) throw InvalidArgument("config: delta must lie in (0, 1/2]");
    if (output_dir.empty()) throw InvalidArgument("config: output_dir is empty");
    try {
        (void)params();
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
}

ExperimentConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidArgument("config: top level must be an object");

    ExperimentConfig c;
    c.n_list = required<std::vector<int>>(j, "n_list");
    c.sigma_sq = required<std::vector<double>>(j, "sigma_sq");
    c.lambda = required<std::vector<double>>(j, "lambda");
    c.gammas = optional<std::vector<double>>(j, "gammas", {});
    c.replicates = required<int>(j, "replicates");
    c.base_seed = required<std::uint64_t>(j, "base_seed");
    c.delta = optional<double>(j, "delta", c.delta);
    c.output_dir = optional<std::string>(j, "output_dir", c.output_dir);
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_json(const ExperimentConfig& c) {
    const json j = {{"n_list", c.n_list},         {"sigma_sq", c.sigma_sq},     {"lambda", c.lambda},
                    {"gammas", c.gammas},         {"replicates", c.replicates}, {"base_seed", c.base_seed},
                    {"delta", c.delta},           {"output_dir", c.output_dir}};
    return j.dump(2) + "\n";
}

}  // namespace igff::experiments
