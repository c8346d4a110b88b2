#pragma once

#include <vector>

#include "softdmp/entropy.hpp"
#include "softdmp/mdp.hpp"
#include "softdmp/operators.hpp"
#include "softdmp/qtable.hpp"

namespace softdmp {

struct PlanResult {
    QTable q;
    std::vector<double> v;  // v[s] = mellow_max(q.row(s), eta)
    int iterations = 0;
    double residual = 0.0;  // sup-norm change of the last sweep
    bool converged = false;
};

/// Soft Q value iteration with synchronous (Jacobi) sweeps:
///   q(s, a) <- sum_{s'} P(s'|s,a) [R(s,a,s') + gamma * MM_eta(q(s', .))]
/// until the sup-norm change drops below tol or max_iter sweeps elapse.
/// Absorbing states keep value 0. converged reports whether tol was met.
PlanResult soft_qvi(const Mdp& mdp, EntropyParam eta, double tol = 1e-10,
                    int max_iter = 100000);

/// Greedy action sets per state. "optimal" follows the operator's own
/// extremum (argmax for eta > 0, argmin for eta < 0, every action for
/// eta = 0); "flipped" is the opposite extremum.
struct PolicySets {
    std::vector<std::vector<int>> optimal;
    std::vector<std::vector<int>> flipped;
};

PolicySets derive_policies(const PlanResult& result, EntropyParam eta);

}  // namespace softdmp
