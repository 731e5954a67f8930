#ifndef PSOKIT_CONFIG_HPP
#define PSOKIT_CONFIG_HPP

#include <string>

#include <json.hpp>

#include "psokit/swarm.hpp"

namespace psokit {

/// JSON forms used by config files and run logs. Parsing is strict: unknown
/// fields are rejected, as are wrong types.

FormulationConfig formulation_from_json(const nlohmann::json& j,
                                        bool allow_seed = false);
nlohmann::json formulation_to_json(const FormulationConfig& f);

TopologySpec topology_from_json(const nlohmann::json& j);
nlohmann::json topology_to_json(const TopologySpec& spec);

SwarmConfig swarm_config_from_json(const nlohmann::json& j);
nlohmann::json swarm_config_to_json(const SwarmConfig& config);

SwarmConfig load_swarm_config(const std::string& path);
nlohmann::json load_json_file(const std::string& path);

}  // namespace psokit

#endif  // PSOKIT_CONFIG_HPP
