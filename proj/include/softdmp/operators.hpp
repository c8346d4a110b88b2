#pragma once

#include <span>
#include <vector>

#include "softdmp/entropy.hpp"

namespace softdmp {

/// Probability vector over the discrete action set.
using ActionDistribution = std::vector<double>;

/// Absolute tolerance used when collecting tied extrema into greedy sets.
inline constexpr double kGreedyTieTolerance = 1e-9;

/// Log-average-exp value operator:
///   eta = +inf -> max, eta in (0, inf) -> mellow-max, eta = 0 -> mean,
///   eta in (-inf, 0) -> mellow-min, eta = -inf -> min.
/// Finite eta evaluates (1/eta) * log(mean_a exp(eta * q_a)) with the row
/// shifted by its max (eta > 0) or min (eta < 0), so no intermediate
/// overflows for |eta * q| up to 1e6 and beyond.
/// Throws std::invalid_argument on an empty row.
double mellow_max(std::span<const double> q_row, EntropyParam eta);

enum class GreedyMode { Argmax, Argmin };

/// All action indices attaining the row extremum within kGreedyTieTolerance,
/// in increasing index order.
std::vector<int> greedy_action_set(std::span<const double> q_row, GreedyMode mode);

/// Boltzmann action distribution: probs proportional to exp(eta * q), or to
/// exp(-eta * q) when flipped. Infinite effective eta yields the uniform
/// distribution over the corresponding greedy set; eta = 0 yields uniform.
/// boltzmann_policy(q, eta, true) equals boltzmann_policy(q, -eta, false)
/// exactly.
ActionDistribution boltzmann_policy(std::span<const double> q_row, EntropyParam eta,
                                    bool flipped = false);

/// True when probs is non-negative and sums to 1 within tol.
bool is_distribution(std::span<const double> probs, double tol = 1e-12);

}  // namespace softdmp
