#ifndef MLNDS_IO_PLAN_HPP_
#define MLNDS_IO_PLAN_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "../generators.hpp"
#include "../mltm.hpp"
#include "../seeding.hpp"
#include "records.hpp"

namespace mlnds {

struct NetworkFile {
    std::string path;
};

using NetworkSource = std::variant<NetworkFile, ErGenConfig, PaGenConfig>;

struct NetworkSpec {
    std::string name;
    std::string type = "real"; // aggregation stratum: ER, SF or real
    NetworkSource source;
    std::size_t instances = 1;
};

/// The experiment grid: every network instance is crossed with every
/// protocol, threshold, budget, method and repetition.
struct ExperimentPlan {
    std::vector<NetworkSpec> networks;
    std::vector<Protocol> protocols;
    std::vector<double> budgets;
    std::vector<double> thresholds;
    std::vector<Method> methods;
    std::size_t repetitions = 1;
    std::uint64_t base_rng_seed = 0;
    double mds_timeout_minutes_per_1000_actors = 5.0;
    double significance = 0.01;
};

class PlanError : public Error {
public:
    using Error::Error;
};

inline void validate(const ExperimentPlan& plan) {
    if (plan.networks.empty() || plan.protocols.empty() || plan.budgets.empty() || plan.thresholds.empty() ||
        plan.methods.empty())
        throw PlanError("plan lists must be non-empty");
    for (double b : plan.budgets)
        if (!(b > 0.0 && b < 1.0))
            throw PlanError("budgets must lie strictly inside (0, 1)");
    for (double t : plan.thresholds)
        if (!(t > 0.0 && t < 1.0))
            throw PlanError("thresholds must lie strictly inside (0, 1)");
    if (plan.repetitions < 1)
        throw PlanError("repetitions must be at least 1");
    if (!(plan.mds_timeout_minutes_per_1000_actors > 0.0))
        throw PlanError("mds timeout must be positive");
    for (const auto& n : plan.networks) {
        if (n.name.empty())
            throw PlanError("network name must not be empty");
        csv::check_field(n.name);
        if (n.instances < 1)
            throw PlanError("network '" + n.name + "' needs at least one instance");
        if (std::holds_alternative<NetworkFile>(n.source) && n.instances != 1)
            throw PlanError("file network '" + n.name + "' cannot have several instances");
    }
}

namespace detail {

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

inline NetworkSource parse_source(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    if (j.contains("file")) {
        std::filesystem::path p = j.at("file").get<std::string>();
        if (p.is_relative())
            p = base_dir / p;
        return NetworkFile{p.lexically_normal().string()};
    }
    if (!j.contains("generator"))
        throw PlanError("network entry needs 'file' or 'generator'");
    const auto& g = j.at("generator");
    const auto model = g.at("model").get<std::string>();
    if (model == "er") {
        ErGenConfig c;
        c.n_actors = g.at("n_actors").get<std::size_t>();
        c.n_layers = g.at("n_layers").get<std::size_t>();
        c.edges_per_layer = g.at("edges_per_layer").get<std::vector<std::size_t>>();
        c.rng_seed = get_or<std::uint64_t>(g, "seed", 0);
        return c;
    }
    if (model == "pa") {
        PaGenConfig c;
        c.n_actors = g.at("n_actors").get<std::size_t>();
        c.n_layers = g.at("n_layers").get<std::size_t>();
        c.m0 = g.at("m0").get<std::size_t>();
        c.m = g.at("m").get<std::size_t>();
        c.pr_internal = g.at("pr_internal").get<double>();
        c.pr_external = g.at("pr_external").get<double>();
        c.pr_none = g.at("pr_none").get<double>();
        if (g.contains("dependency") && !g.at("dependency").is_null())
            c.dependency = g.at("dependency").get<std::vector<std::vector<double>>>();
        c.rng_seed = get_or<std::uint64_t>(g, "seed", 0);
        c.initial_clique = get_or<bool>(g, "initial_clique", true);
        c.freeze_degrees = get_or<bool>(g, "freeze_degrees", true);
        validate(c);
        return c;
    }
    throw PlanError("unknown generator model '" + model + "'");
}

inline nlohmann::json source_json(const NetworkSource& src) {
    return std::visit(
        [](const auto& s) -> nlohmann::json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, NetworkFile>) {
                return {{"file", s.path}};
            } else if constexpr (std::is_same_v<T, ErGenConfig>) {
                return {{"generator",
                         {{"model", "er"},
                          {"n_actors", s.n_actors},
                          {"n_layers", s.n_layers},
                          {"edges_per_layer", s.edges_per_layer},
                          {"seed", s.rng_seed}}}};
            } else {
                nlohmann::json g = {{"model", "pa"},         {"n_actors", s.n_actors},
                                    {"n_layers", s.n_layers}, {"m0", s.m0},
                                    {"m", s.m},               {"pr_internal", s.pr_internal},
                                    {"pr_external", s.pr_external}, {"pr_none", s.pr_none},
                                    {"seed", s.rng_seed},     {"initial_clique", s.initial_clique},
                                    {"freeze_degrees", s.freeze_degrees}};
                g["dependency"] = s.dependency.empty() ? nlohmann::json(nullptr) : nlohmann::json(s.dependency);
                return {{"generator", g}};
            }
        },
        src);
}

} // namespace detail

/// Parses the JSON plan document. Relative network file paths resolve
/// against `base_dir` (the plan file's directory).
inline ExperimentPlan parse_plan(std::string_view text, const std::filesystem::path& base_dir = ".") {
    ExperimentPlan plan;
    try {
        auto j = nlohmann::json::parse(text);
        for (const auto& n : j.at("networks")) {
            NetworkSpec spec;
            spec.name = n.at("name").get<std::string>();
            spec.type = detail::get_or<std::string>(n, "type", "real");
            spec.instances = detail::get_or<std::size_t>(n, "instances", 1);
            spec.source = detail::parse_source(n, base_dir);
            plan.networks.push_back(std::move(spec));
        }
        for (const auto& p : j.at("protocols"))
            plan.protocols.push_back(parse_protocol(p.get<std::string>()));
        plan.budgets = j.at("budgets").get<std::vector<double>>();
        plan.thresholds = j.at("thresholds").get<std::vector<double>>();
        for (const auto& m : j.at("methods"))
            plan.methods.push_back(parse_method(m.get<std::string>()));
        plan.repetitions = j.at("repetitions").get<std::size_t>();
        plan.base_rng_seed = detail::get_or<std::uint64_t>(j, "base_rng_seed", 0);
        plan.mds_timeout_minutes_per_1000_actors =
            detail::get_or<double>(j, "mds_timeout_minutes_per_1000_actors", 5.0);
        plan.significance = detail::get_or<double>(j, "significance", 0.01);
    } catch (const nlohmann::json::exception& e) {
        throw PlanError(std::string("malformed plan: ") + e.what());
    }
    validate(plan);
    return plan;
}

inline ExperimentPlan load_plan_file(const std::string& path) {
    return parse_plan(read_text_file(path), std::filesystem::path(path).parent_path());
}

inline std::string write_plan(const ExperimentPlan& plan) {
    nlohmann::json j;
    j["networks"] = nlohmann::json::array();
    for (const auto& n : plan.networks) {
        auto e = detail::source_json(n.source);
        e["name"] = n.name;
        e["type"] = n.type;
        e["instances"] = n.instances;
        j["networks"].push_back(e);
    }
    for (auto p : plan.protocols)
        j["protocols"].push_back(std::string(to_string(p)));
    j["budgets"] = plan.budgets;
    j["thresholds"] = plan.thresholds;
    for (auto m : plan.methods)
        j["methods"].push_back(std::string(to_string(m)));
    j["repetitions"] = plan.repetitions;
    j["base_rng_seed"] = plan.base_rng_seed;
    j["mds_timeout_minutes_per_1000_actors"] = plan.mds_timeout_minutes_per_1000_actors;
    j["significance"] = plan.significance;
    return j.dump(2) + "\n";
}

} // namespace mlnds

#endif // MLNDS_IO_PLAN_HPP_
