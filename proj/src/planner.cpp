#include "softdmp/planner.hpp"

#include <algorithm>
#include <cmath>

namespace softdmp {

PlanResult soft_qvi(const Mdp& mdp, EntropyParam eta, double tol, int max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("soft_qvi: tol must be positive");
    if (max_iter <= 0) throw std::invalid_argument("soft_qvi: max_iter must be positive");

    PlanResult result;
    result.q = QTable(mdp.n_states, mdp.n_actions);
    QTable next(mdp.n_states, mdp.n_actions);
    std::vector<double> v(static_cast<std::size_t>(mdp.n_states), 0.0);

    const double gamma = mdp.discount;
    for (int iter = 1; iter <= max_iter; ++iter) {
        for (int s = 0; s < mdp.n_states; ++s)
            v[static_cast<std::size_t>(s)] =
                mdp.absorbing[static_cast<std::size_t>(s)] ? 0.0 : mellow_max(result.q.row(s), eta);

        double residual = 0.0;
        for (int s = 0; s < mdp.n_states; ++s) {
            if (mdp.absorbing[static_cast<std::size_t>(s)]) continue;  // pinned at 0
            for (int a = 0; a < mdp.n_actions; ++a) {
                double backup = 0.0;
                for (const auto& o : mdp.outcomes(s, a))
                    backup += o.prob * (o.reward + gamma * v[static_cast<std::size_t>(o.next)]);
                residual = std::max(residual, std::abs(backup - result.q.at(s, a)));
                next.at(s, a) = backup;
            }
        }
        std::swap(result.q, next);
        result.iterations = iter;
        result.residual = residual;
        if (residual < tol) {
            result.converged = true;
            break;
        }
    }

    result.v.assign(static_cast<std::size_t>(mdp.n_states), 0.0);
    for (int s = 0; s < mdp.n_states; ++s)
        result.v[static_cast<std::size_t>(s)] =
            mdp.absorbing[static_cast<std::size_t>(s)] ? 0.0 : mellow_max(result.q.row(s), eta);
    return result;
}

PolicySets derive_policies(const PlanResult& result, EntropyParam eta) {
    const int n_states = result.q.n_states();
    const int n_actions = result.q.n_actions();
    PolicySets sets;
    sets.optimal.resize(static_cast<std::size_t>(n_states));
    sets.flipped.resize(static_cast<std::size_t>(n_states));

    std::vector<int> all(static_cast<std::size_t>(n_actions));
    for (int a = 0; a < n_actions; ++a) all[static_cast<std::size_t>(a)] = a;

    for (int s = 0; s < n_states; ++s) {
        if (eta.is_zero()) {
            // The mean operator prefers no action; both sets are the full set.
            sets.optimal[static_cast<std::size_t>(s)] = all;
            sets.flipped[static_cast<std::size_t>(s)] = all;
            continue;
        }
        const GreedyMode own = eta.is_positive() ? GreedyMode::Argmax : GreedyMode::Argmin;
        const GreedyMode other = eta.is_positive() ? GreedyMode::Argmin : GreedyMode::Argmax;
        sets.optimal[static_cast<std::size_t>(s)] = greedy_action_set(result.q.row(s), own);
        sets.flipped[static_cast<std::size_t>(s)] = greedy_action_set(result.q.row(s), other);
    }
    return sets;
}

}  // namespace softdmp
