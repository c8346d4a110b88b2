#pragma once

#include <string>
#include <vector>

#include "softdmp/planner.hpp"

namespace softdmp {

/// Per-episode statistics of a learning run.
struct EpisodeRecord {
    int episode = 0;
    int steps = 0;
    double total_reward = 0.0;
    int collisions = 0;
    bool reached_goal = false;

    void validate() const;  // steps >= 1, collisions <= steps
};

/// Centered moving average with shrinking windows at the boundaries.
/// window = 1 is the identity; even windows extend one extra index to the
/// right.
std::vector<double> smooth(const std::vector<double>& series, int window);

/// A run's records plus smoothed curves and summary rates. Bumping is
/// reported both per step (collision_rate) and per episode
/// (collisions_per_episode).
struct RunSummary {
    std::vector<EpisodeRecord> records;
    std::vector<double> smoothed_steps;
    std::vector<double> smoothed_reward;
    double avg_step_length = 0.0;
    double collision_rate = 0.0;
    double collisions_per_episode = 0.0;

    static RunSummary from_records(std::vector<EpisodeRecord> records, int smoothing_window);
};

/// Elementwise mean and standard error across trials of equal length.
struct AggregateCurves {
    std::vector<double> mean_steps;
    std::vector<double> se_steps;
    std::vector<double> mean_collisions;
    std::vector<double> se_collisions;
    std::vector<double> mean_reward;
    std::vector<double> se_reward;
};

AggregateCurves aggregate_trials(const std::vector<RunSummary>& summaries);

// ---------------------------------------------------------------------------
// CSV emission (RFC-4180 style, header row mandatory, floats with 12
// significant digits)
// ---------------------------------------------------------------------------

std::string format_float(double v);

std::string run_csv(const RunSummary& summary);
std::string aggregate_csv(const AggregateCurves& agg);

/// One row per state: v plus per-action q values.
std::string values_csv(const PlanResult& result, const std::vector<std::string>& action_names);

/// One row per state with v(s) = MM_eta(q(s, .)) computed from a learned
/// table.
std::string qtable_values_csv(const QTable& q, EntropyParam eta,
                              const std::vector<std::string>& action_names);

/// Greedy action sets per state; sets are '|'-joined action names.
std::string policies_csv(const PolicySets& sets, const std::vector<std::string>& action_names);

void write_file(const std::string& path, const std::string& content);

}  // namespace softdmp
