#pragma once

#include <string>
#include <vector>

#include "softdmp/mdp.hpp"

namespace softdmp {

enum ChainAction : int { kChainLeft = 0, kChainRight = 1, kChainStop = 2 };
inline constexpr int kChainActionCount = 3;
extern const std::vector<std::string> kChainActionNames;

/// One-dimensional chain of states with painful edges.
struct ChainSpec {
    int length = 21;
    double edge_reward = -0.1;

    void validate() const;
};

/// Builds the chain MDP: actions left/right/stop, moving off an end keeps
/// the agent at the edge, and any transition whose destination is an edge
/// state (including stop at the edge) yields edge_reward. No absorbing
/// states. The initial distribution is uniform over all states.
Mdp build_chain(const ChainSpec& spec, double discount);

}  // namespace softdmp
