#include "softdmp/env_model.hpp"

#include <stdexcept>

namespace softdmp {

using nlohmann::json;

namespace {

void reject_unknown_fields(const json& spec, std::initializer_list<const char*> known) {
    for (const auto& [key, _] : spec.items()) {
        bool ok = false;
        for (const char* k : known) ok |= key == k;
        if (!ok) throw std::invalid_argument("env spec: unknown field '" + key + "'");
    }
}

}  // namespace

EnvModel build_env(const json& spec, double discount) {
    if (!spec.is_object() || !spec.contains("type"))
        throw std::invalid_argument("env spec: missing 'type'");
    EnvModel env;
    env.type = spec.at("type").get<std::string>();
    if (env.type == "grid") {
        reject_unknown_fields(spec, {"type", "map", "collision_reward", "goal_reward"});
        if (!spec.contains("map")) throw std::invalid_argument("env spec: grid needs 'map'");
        GridSpec grid = parse_grid_map(spec.at("map").get<std::vector<std::string>>());
        grid.collision_reward = spec.value("collision_reward", 0.0);
        grid.goal_reward = spec.value("goal_reward", 0.0);
        env.mdp = build_gridworld(grid, discount);
        env.action_names = kGridActionNames;
        env.grid = grid;
    } else if (env.type == "chain") {
        reject_unknown_fields(spec, {"type", "length", "edge_reward"});
        ChainSpec chain;
        chain.length = spec.value("length", 21);
        chain.edge_reward = spec.value("edge_reward", -0.1);
        env.mdp = build_chain(chain, discount);
        env.action_names = kChainActionNames;
        env.chain = chain;
    } else {
        throw std::invalid_argument("env spec: unknown type '" + env.type + "'");
    }
    return env;
}

}  // namespace softdmp
