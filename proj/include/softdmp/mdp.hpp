#pragma once

#include <utility>
#include <vector>

#include "softdmp/rng.hpp"

namespace softdmp {

/// Finite MDP. Transitions are stored as sparse outcome lists per (s, a);
/// the deterministic benchmark environments have exactly one outcome per
/// pair. Rewards ride on outcomes, giving the (s, a, s') indexing.
struct Mdp {
    struct Outcome {
        int next = 0;
        double prob = 0.0;
        double reward = 0.0;
    };

    int n_states = 0;
    int n_actions = 0;
    /// transition[s][a] -> outcome list; probabilities sum to 1 per (s, a).
    std::vector<std::vector<std::vector<Outcome>>> transition;
    std::vector<double> initial_dist;
    std::vector<bool> absorbing;
    double discount = 0.9;

    const std::vector<Outcome>& outcomes(int s, int a) const {
        return transition[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
    }

    /// Checks the structural invariants; throws std::invalid_argument on
    /// violation. Every (s, a) row and the initial distribution must sum to 1
    /// within 1e-12; absorbing states must self-loop with reward 0.
    void validate() const;

    /// True when every (s, a) has a single outcome with probability 1.
    bool deterministic() const;
};

/// Splits the reward signal into its non-negative and non-positive parts.
/// Both halves share the dynamics; rewards satisfy r_plus + r_minus = r
/// elementwise, exactly.
std::pair<Mdp, Mdp> decompose_reward(const Mdp& mdp);

/// Steps an Mdp as an episodic environment.
class Simulator {
public:
    struct Step {
        int next = 0;
        double reward = 0.0;
        bool terminal = false;
    };

    explicit Simulator(const Mdp& mdp) : mdp_(&mdp) {}

    /// Samples the initial state. Consumes one rng draw only when the
    /// initial distribution is non-degenerate.
    int reset(Rng& rng);

    /// Applies action a from the current state. Deterministic rows consume
    /// no rng draw; stochastic rows consume exactly one.
    Step step(int a, Rng& rng);

    int state() const { return state_; }

private:
    const Mdp* mdp_;
    int state_ = 0;
};

}  // namespace softdmp
