#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "softdmp/entropy.hpp"
#include "softdmp/env_model.hpp"
#include "softdmp/learner.hpp"
#include "softdmp/metrics.hpp"

namespace softdmp {

/// Config validation failure; names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("config field '" + field + "': " + message),
          field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Planner failed to reach tolerance within its iteration budget.
class QviNotConverged : public std::runtime_error {
public:
    QviNotConverged(double residual, int iterations)
        : std::runtime_error("qvi did not converge: residual " + std::to_string(residual) +
                             " after " + std::to_string(iterations) + " iterations"),
          residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

enum class Algorithm { Qvi, Sql, QLearning, Dmp, SoftDmpOne, SoftDmpSep };

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

/// One experiment: a single algorithm on a single environment, executed once
/// per seed. Built from JSON; to_json() re-emits the fully resolved form
/// (env inlined, defaults filled), which is what run manifests contain.
struct ExperimentConfig {
    std::string name;
    nlohmann::json env;  // inline env spec
    Algorithm algorithm = Algorithm::Qvi;

    std::vector<EntropyParam> etas = {EntropyParam::pos_inf()};  // qvi / sql sweeps
    EntropyParam eta_plus = EntropyParam::pos_inf();
    EntropyParam eta_minus = EntropyParam::neg_inf();

    double alpha = 0.025;
    double alpha_plus = 0.025;
    double alpha_minus = 0.001;
    double gamma = 0.9;
    double gamma_plus = 0.99;
    double gamma_minus = 0.9;

    int episodes = 1;
    int max_steps = 500;
    std::vector<std::uint64_t> seeds = {0};
    std::size_t buffer_capacity = 10000;
    int batch = 32;
    Weighting weighting = Weighting::hardmax();
    bool discriminator_flipped = false;
    int smoothing_window = 50;

    double qvi_tol = 1e-10;
    int qvi_max_iter = 100000;

    std::string out_dir;  // optional; CLI may override

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    bool is_learning() const { return algorithm != Algorithm::Qvi; }
    bool is_softdmp() const {
        return algorithm == Algorithm::Dmp || algorithm == Algorithm::SoftDmpOne ||
               algorithm == Algorithm::SoftDmpSep;
    }
};

/// Results of one seed's learning run, kept for tests and aggregation.
struct SeedResult {
    std::uint64_t seed = 0;
    RunSummary summary;
    std::size_t routed_minus = 0;
    std::size_t ingested = 0;
    bool reached_goal_ever = false;
};

/// Everything run_experiment produced, in memory. Files are also written
/// to the output directory.
struct ExperimentResult {
    std::vector<std::string> files_written;
    std::vector<SeedResult> seed_results;  // learning algorithms only
};

/// Executes the experiment and writes its artifacts (manifest.json plus
/// CSV outputs) under out_dir, creating it if needed. Identical
/// (config, seed) pairs produce byte-identical files. Throws ConfigError
/// on invalid configs and QviNotConverged when the planner fails.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir);

/// Runs the learning episodes of one seed; exposed for tests.
SeedResult run_learning_seed(const ExperimentConfig& cfg, const EnvModel& env,
                             std::uint64_t seed);

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// A named, shipped experiment. Composite presets expand to several runs,
/// each in its own subdirectory.
struct Preset {
    struct Run {
        std::string subdir;  // empty for single-run presets
        nlohmann::json config;
    };
    std::string name;
    std::string description;
    std::vector<Run> runs;
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

}  // namespace softdmp
