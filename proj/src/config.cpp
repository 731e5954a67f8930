#include "psokit/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace psokit {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& item : j.items()) {
        if (!allowed.contains(item.key())) {
            throw std::invalid_argument("unknown field '" + item.key() + "' in " + where);
        }
    }
}

double get_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) {
        throw std::invalid_argument("missing field '" + key + "' in " + where);
    }
    if (!j.at(key).is_number()) {
        throw std::invalid_argument("field '" + key + "' in " + where + " must be a number");
    }
    return j.at(key).get<double>();
}

double get_number_or(const json& j, const std::string& key, double fallback,
                     const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) {
        throw std::invalid_argument("field '" + key + "' in " + where + " must be a number");
    }
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
        throw std::invalid_argument("field '" + key + "' in " + where +
                                    " must be an integer");
    }
    return j.at(key).get<int>();
}

bool get_bool_or(const json& j, const std::string& key, bool fallback,
                 const std::string& where) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) {
        throw std::invalid_argument("field '" + key + "' in " + where + " must be a boolean");
    }
    return j.at(key).get<bool>();
}

}  // namespace

FormulationConfig formulation_from_json(const json& j, bool allow_seed) {
    const std::string where = "formulation config";
    if (!j.is_object() || !j.contains("formulation") || !j.at("formulation").is_string()) {
        throw std::invalid_argument(where + " must be an object with a 'formulation' tag");
    }
    const std::string kind = j.at("formulation").get<std::string>();
    std::set<std::string> allowed = {"formulation"};
    if (allow_seed) allowed.insert("seed");

    if (kind == "classical") {
        allowed.insert({"w", "iw", "sw"});
        reject_unknown(j, allowed, where);
        return make_classical(get_number(j, "w", where), get_number(j, "iw", where),
                              get_number(j, "sw", where));
    }
    if (kind == "general") {
        allowed.insert({"w", "phi_min", "phi_max", "ip"});
        reject_unknown(j, allowed, where);
        return make_general(get_number(j, "w", where), get_number(j, "phi_min", where),
                            get_number(j, "phi_max", where),
                            get_number_or(j, "ip", 0.5, where));
    }
    if (kind == "constricted") {
        allowed.insert({"aw", "kappa", "ip"});
        reject_unknown(j, allowed, where);
        return make_constricted(get_number(j, "aw", where),
                                get_number(j, "kappa", where),
                                get_number_or(j, "ip", 0.5, where));
    }
    throw std::invalid_argument("formulation must be classical, general or constricted");
}

json formulation_to_json(const FormulationConfig& f) {
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ClassicalParams>) {
                return {{"formulation", "classical"}, {"w", p.w}, {"iw", p.iw}, {"sw", p.sw}};
            } else if constexpr (std::is_same_v<T, GeneralParams>) {
                return {{"formulation", "general"},
                        {"w", p.w},
                        {"phi_min", p.phi_min},
                        {"phi_max", p.phi_max},
                        {"ip", p.ip}};
            } else {
                return {{"formulation", "constricted"},
                        {"aw", p.aw},
                        {"kappa", p.kappa},
                        {"ip", p.ip}};
            }
        },
        f);
}

TopologySpec topology_from_json(const json& j) {
    const std::string where = "topology config";
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw std::invalid_argument(where + " must be an object with a 'kind' tag");
    }
    const std::string kind = j.at("kind").get<std::string>();
    TopologySpec spec;
    std::set<std::string> allowed = {"kind", "include_self"};

    if (kind == "global") {
        spec.kind = TopologySpec::Kind::Global;
    } else if (kind == "ring") {
        spec.kind = TopologySpec::Kind::Ring;
        allowed.insert("k");
        spec.k = get_int(j, "k", where);
    } else if (kind == "wheel") {
        spec.kind = TopologySpec::Kind::Wheel;
    } else if (kind == "random") {
        spec.kind = TopologySpec::Kind::Random;
        allowed.insert("out_degree");
        spec.out_degree = get_int(j, "out_degree", where);
    } else if (kind == "forward") {
        spec.kind = TopologySpec::Kind::Forward;
        allowed.insert("k");
        spec.k = get_int(j, "k", where);
    } else if (kind == "von_neumann") {
        spec.kind = TopologySpec::Kind::VonNeumann;
        allowed.insert({"rows", "cols"});
        spec.rows = get_int(j, "rows", where);
        spec.cols = get_int(j, "cols", where);
    } else {
        throw std::invalid_argument("unknown topology kind '" + kind + "'");
    }
    reject_unknown(j, allowed, where);
    spec.include_self = get_bool_or(j, "include_self", true, where);
    return spec;
}

json topology_to_json(const TopologySpec& spec) {
    json j{{"kind", to_string(spec.kind)}, {"include_self", spec.include_self}};
    switch (spec.kind) {
        case TopologySpec::Kind::Ring:
        case TopologySpec::Kind::Forward:
            j["k"] = spec.k;
            break;
        case TopologySpec::Kind::Random:
            j["out_degree"] = spec.out_degree;
            break;
        case TopologySpec::Kind::VonNeumann:
            j["rows"] = spec.rows;
            j["cols"] = spec.cols;
            break;
        default:
            break;
    }
    return j;
}

SwarmConfig swarm_config_from_json(const json& j) {
    const std::string where = "swarm config";
    if (!j.is_object()) throw std::invalid_argument(where + " must be an object");
    reject_unknown(j,
                   {"swarm_size", "dimensions", "bounds", "formulation", "topology",
                    "vmax_fraction", "max_iterations", "target_tolerance", "seed",
                    "feasible_pbest_only", "parallel_evaluation"},
                   where);

    SwarmConfig config;
    config.swarm_size = get_int(j, "swarm_size", where);
    config.dimensions = get_int(j, "dimensions", where);

    if (!j.contains("bounds") || !j.at("bounds").is_array()) {
        throw std::invalid_argument("swarm config needs a 'bounds' array");
    }
    const json& b = j.at("bounds");
    const auto read_pair = [&](const json& pair) -> std::array<double, 2> {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number()) {
            throw std::invalid_argument("each bound must be a [min, max] number pair");
        }
        return {pair[0].get<double>(), pair[1].get<double>()};
    };
    if (b.size() == 2 && b[0].is_number() && b[1].is_number()) {
        // A single [min, max] pair broadcasts to every dimension.
        config.bounds.assign(static_cast<std::size_t>(config.dimensions),
                             {b[0].get<double>(), b[1].get<double>()});
    } else {
        for (const json& pair : b) config.bounds.push_back(read_pair(pair));
    }

    if (!j.contains("formulation")) {
        throw std::invalid_argument("swarm config needs a 'formulation' object");
    }
    config.formulation = formulation_from_json(j.at("formulation"), /*allow_seed=*/false);

    if (!j.contains("topology")) {
        throw std::invalid_argument("swarm config needs a 'topology' object");
    }
    config.topology = topology_from_json(j.at("topology"));

    if (j.contains("vmax_fraction") && !j.at("vmax_fraction").is_null()) {
        config.vmax_fraction = get_number(j, "vmax_fraction", where);
    }
    config.max_iterations = get_int(j, "max_iterations", where);
    if (j.contains("target_tolerance") && !j.at("target_tolerance").is_null()) {
        config.target_tolerance = get_number(j, "target_tolerance", where);
    }
    if (!j.contains("seed") || !j.at("seed").is_number_unsigned()) {
        throw std::invalid_argument("swarm config needs an unsigned 'seed'");
    }
    config.seed = j.at("seed").get<std::uint64_t>();
    config.feasible_pbest_only = get_bool_or(j, "feasible_pbest_only", false, where);
    config.parallel_evaluation = get_bool_or(j, "parallel_evaluation", false, where);

    validate_config(config);
    return config;
}

json swarm_config_to_json(const SwarmConfig& config) {
    json bounds = json::array();
    for (const auto& pair : config.bounds) bounds.push_back({pair[0], pair[1]});
    json j{{"swarm_size", config.swarm_size},
           {"dimensions", config.dimensions},
           {"bounds", bounds},
           {"formulation", formulation_to_json(config.formulation)},
           {"topology", topology_to_json(config.topology)},
           {"max_iterations", config.max_iterations},
           {"seed", config.seed},
           {"feasible_pbest_only", config.feasible_pbest_only},
           {"parallel_evaluation", config.parallel_evaluation}};
    if (config.vmax_fraction) j["vmax_fraction"] = *config.vmax_fraction;
    if (config.target_tolerance) j["target_tolerance"] = *config.target_tolerance;
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

SwarmConfig load_swarm_config(const std::string& path) {
    return swarm_config_from_json(load_json_file(path));
}

}  // namespace psokit
