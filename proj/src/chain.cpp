#include "softdmp/chain.hpp"

#include <algorithm>
#include <stdexcept>

namespace softdmp {

const std::vector<std::string> kChainActionNames = {"left", "right", "stop"};

void ChainSpec::validate() const {
    if (length < 3) throw std::invalid_argument("ChainSpec: length must be >= 3");
}

Mdp build_chain(const ChainSpec& spec, double discount) {
    spec.validate();
    Mdp mdp;
    mdp.n_states = spec.length;
    mdp.n_actions = kChainActionCount;
    mdp.discount = discount;
    mdp.transition.assign(static_cast<std::size_t>(spec.length), {});
    mdp.initial_dist.assign(static_cast<std::size_t>(spec.length),
                            1.0 / static_cast<double>(spec.length));
    mdp.absorbing.assign(static_cast<std::size_t>(spec.length), false);

    const int last = spec.length - 1;
    for (int s = 0; s < spec.length; ++s) {
        auto& row = mdp.transition[static_cast<std::size_t>(s)];
        row.resize(kChainActionCount);
        for (int a = 0; a < kChainActionCount; ++a) {
            int dest = s;
            if (a == kChainLeft) dest = std::max(0, s - 1);
            if (a == kChainRight) dest = std::min(last, s + 1);
            const double reward = (dest == 0 || dest == last) ? spec.edge_reward : 0.0;
            row[static_cast<std::size_t>(a)] = {{dest, 1.0, reward}};
        }
    }
    mdp.validate();
    return mdp;
}

}  // namespace softdmp
