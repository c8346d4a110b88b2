#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "softdmp/chain.hpp"
#include "softdmp/gridworld.hpp"
#include "softdmp/mdp.hpp"

namespace softdmp {

/// A constructed environment plus the metadata needed for reporting.
struct EnvModel {
    std::string type;  // "grid" or "chain"
    Mdp mdp;
    std::vector<std::string> action_names;
    std::optional<GridSpec> grid;
    std::optional<ChainSpec> chain;
};

/// Builds an environment from its JSON spec:
///   {"type": "grid", "map": [...rows...], "collision_reward": r, "goal_reward": r}
///   {"type": "chain", "length": n, "edge_reward": r}
/// Grid maps are ASCII rows ('#' wall, '.' free, 'S' start, 'G' goal).
/// The discount is supplied by the experiment, not the env spec.
EnvModel build_env(const nlohmann::json& spec, double discount);

}  // namespace softdmp
