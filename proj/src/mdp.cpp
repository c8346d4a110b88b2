#include "softdmp/mdp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace softdmp {

namespace {
constexpr double kStochasticTol = 1e-12;
}

void Mdp::validate() const {
    if (n_states <= 0) throw std::invalid_argument("Mdp: n_states must be positive");
    if (n_actions <= 0) throw std::invalid_argument("Mdp: n_actions must be positive");
    if (discount < 0.0 || discount >= 1.0)
        throw std::invalid_argument("Mdp: discount must lie in [0, 1)");
    if (transition.size() != static_cast<std::size_t>(n_states))
        throw std::invalid_argument("Mdp: transition table has wrong state count");
    if (initial_dist.size() != static_cast<std::size_t>(n_states))
        throw std::invalid_argument("Mdp: initial_dist has wrong length");
    if (absorbing.size() != static_cast<std::size_t>(n_states))
        throw std::invalid_argument("Mdp: absorbing flags have wrong length");

    for (int s = 0; s < n_states; ++s) {
        const auto& row = transition[static_cast<std::size_t>(s)];
        if (row.size() != static_cast<std::size_t>(n_actions))
            throw std::invalid_argument("Mdp: state " + std::to_string(s) +
                                        " has wrong action count");
        for (int a = 0; a < n_actions; ++a) {
            double sum = 0.0;
            for (const auto& o : row[static_cast<std::size_t>(a)]) {
                if (o.next < 0 || o.next >= n_states)
                    throw std::invalid_argument("Mdp: outcome state out of range");
                if (o.prob < 0.0)
                    throw std::invalid_argument("Mdp: negative transition probability");
                sum += o.prob;
            }
            if (std::abs(sum - 1.0) > kStochasticTol)
                throw std::invalid_argument("Mdp: transition row (" + std::to_string(s) + ", " +
                                            std::to_string(a) + ") sums to " +
                                            std::to_string(sum));
            if (absorbing[static_cast<std::size_t>(s)]) {
                const auto& outs = row[static_cast<std::size_t>(a)];
                if (outs.size() != 1 || outs[0].next != s || outs[0].prob != 1.0 ||
                    outs[0].reward != 0.0)
                    throw std::invalid_argument(
                        "Mdp: absorbing state " + std::to_string(s) +
                        " must self-transition with probability 1 and reward 0");
            }
        }
    }

    double init_sum = 0.0;
    for (double p : initial_dist) {
        if (p < 0.0) throw std::invalid_argument("Mdp: negative initial probability");
        init_sum += p;
    }
    if (std::abs(init_sum - 1.0) > kStochasticTol)
        throw std::invalid_argument("Mdp: initial_dist sums to " + std::to_string(init_sum));
}

bool Mdp::deterministic() const {
    for (const auto& row : transition)
        for (const auto& outs : row)
            if (outs.size() != 1 || outs[0].prob != 1.0) return false;
    return true;
}

std::pair<Mdp, Mdp> decompose_reward(const Mdp& mdp) {
    Mdp plus = mdp;
    Mdp minus = mdp;
    for (int s = 0; s < mdp.n_states; ++s) {
        for (int a = 0; a < mdp.n_actions; ++a) {
            auto& po = plus.transition[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
            auto& mo = minus.transition[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
            for (std::size_t i = 0; i < po.size(); ++i) {
                const double r = mdp.outcomes(s, a)[i].reward;
                po[i].reward = r > 0.0 ? r : 0.0;
                mo[i].reward = r < 0.0 ? r : 0.0;
            }
        }
    }
    return {plus, minus};
}

int Simulator::reset(Rng& rng) {
    int degenerate = -1;
    int support = 0;
    for (int s = 0; s < mdp_->n_states; ++s) {
        if (mdp_->initial_dist[static_cast<std::size_t>(s)] > 0.0) {
            ++support;
            degenerate = s;
        }
    }
    if (support == 1) {
        state_ = degenerate;
    } else {
        state_ = static_cast<int>(rng.sample(mdp_->initial_dist));
    }
    return state_;
}

Simulator::Step Simulator::step(int a, Rng& rng) {
    const auto& outs = mdp_->outcomes(state_, a);
    const Mdp::Outcome* picked = &outs[0];
    if (outs.size() > 1) {
        const double u = rng.next_double();
        double cum = 0.0;
        for (const auto& o : outs) {
            cum += o.prob;
            if (u < cum) {
                picked = &o;
                break;
            }
            picked = &o;
        }
    }
    state_ = picked->next;
    return Step{picked->next, picked->reward,
                mdp_->absorbing[static_cast<std::size_t>(picked->next)]};
}

}  // namespace softdmp
