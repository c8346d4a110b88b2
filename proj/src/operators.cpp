#include "softdmp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace softdmp {

double mellow_max(std::span<const double> q_row, EntropyParam eta) {
    if (q_row.empty()) throw std::invalid_argument("mellow_max: empty action-value row");

    if (eta.is_pos_inf()) return *std::max_element(q_row.begin(), q_row.end());
    if (eta.is_neg_inf()) return *std::min_element(q_row.begin(), q_row.end());

    const double e = eta.value();
    const std::size_t n = q_row.size();

    if (e == 0.0) {
        // The limit formula is 0/0 at eta = 0; the operator is the exact mean.
        double sum = 0.0;
        for (double q : q_row) sum += q;
        return sum / static_cast<double>(n);
    }

    // Shift toward the dominating element so every exponent is <= 0.
    const double shift = e > 0.0 ? *std::max_element(q_row.begin(), q_row.end())
                                 : *std::min_element(q_row.begin(), q_row.end());
    double acc = 0.0;
    for (double q : q_row) acc += std::exp(e * (q - shift));
    return shift + std::log(acc / static_cast<double>(n)) / e;
}

std::vector<int> greedy_action_set(std::span<const double> q_row, GreedyMode mode) {
    if (q_row.empty()) throw std::invalid_argument("greedy_action_set: empty row");
    const double extremum = mode == GreedyMode::Argmax
                                ? *std::max_element(q_row.begin(), q_row.end())
                                : *std::min_element(q_row.begin(), q_row.end());
    std::vector<int> set;
    for (std::size_t i = 0; i < q_row.size(); ++i) {
        if (std::abs(q_row[i] - extremum) <= kGreedyTieTolerance) set.push_back(static_cast<int>(i));
    }
    return set;
}

ActionDistribution boltzmann_policy(std::span<const double> q_row, EntropyParam eta,
                                    bool flipped) {
    if (q_row.empty()) throw std::invalid_argument("boltzmann_policy: empty row");
    const EntropyParam eff = flipped ? eta.negated() : eta;
    const std::size_t n = q_row.size();

    if (eff.is_pos_inf() || eff.is_neg_inf()) {
        const auto set = greedy_action_set(
            q_row, eff.is_pos_inf() ? GreedyMode::Argmax : GreedyMode::Argmin);
        ActionDistribution probs(n, 0.0);
        const double p = 1.0 / static_cast<double>(set.size());
        for (int a : set) probs[static_cast<std::size_t>(a)] = p;
        return probs;
    }

    const double e = eff.value();
    if (e == 0.0) return ActionDistribution(n, 1.0 / static_cast<double>(n));

    // softmax(e * q), shift-stable.
    double m = e * q_row[0];
    for (std::size_t i = 1; i < n; ++i) m = std::max(m, e * q_row[i]);
    ActionDistribution probs(n);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        probs[i] = std::exp(e * q_row[i] - m);
        z += probs[i];
    }
    for (double& p : probs) p /= z;
    return probs;
}

bool is_distribution(std::span<const double> probs, double tol) {
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0 || std::isnan(p)) return false;
        sum += p;
    }
    return std::abs(sum - 1.0) <= tol;
}

}  // namespace softdmp
