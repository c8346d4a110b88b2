#include "softdmp/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "softdmp/env_model.hpp"
#include "softdmp/planner.hpp"

namespace softdmp {

using nlohmann::json;
namespace fs = std::filesystem;

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Qvi: return "qvi";
        case Algorithm::Sql: return "sql";
        case Algorithm::QLearning: return "q_learning";
        case Algorithm::Dmp: return "dmp";
        case Algorithm::SoftDmpOne: return "softdmp_one";
        case Algorithm::SoftDmpSep: return "softdmp_sep";
    }
    return "qvi";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "qvi") return Algorithm::Qvi;
    if (name == "sql") return Algorithm::Sql;
    if (name == "q_learning") return Algorithm::QLearning;
    if (name == "dmp") return Algorithm::Dmp;
    if (name == "softdmp_one") return Algorithm::SoftDmpOne;
    if (name == "softdmp_sep") return Algorithm::SoftDmpSep;
    throw ConfigError("algorithm", "unknown algorithm '" + name + "'");
}

namespace {

EntropyParam eta_from_json(const json& v, const std::string& field) {
    try {
        if (v.is_string()) return EntropyParam::parse(v.get<std::string>());
        if (v.is_number()) return EntropyParam::finite(v.get<double>());
    } catch (const std::exception& e) {
        throw ConfigError(field, e.what());
    }
    throw ConfigError(field, "expected a number or 'inf'/'-inf'");
}

double number_field(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j.at(field).is_number()) throw ConfigError(field, "expected a number");
    return j.at(field).get<double>();
}

int int_field(const json& j, const std::string& field, int fallback) {
    if (!j.contains(field)) return fallback;
    if (!j.at(field).is_number_integer()) throw ConfigError(field, "expected an integer");
    return j.at(field).get<int>();
}

const std::set<std::string> kKnownFields = {
    "name",        "env",          "algorithm",   "eta",
    "etas",        "eta_plus",     "eta_minus",   "alpha",
    "alpha_plus",  "alpha_minus",  "gamma",       "gamma_plus",
    "gamma_minus", "episodes",     "max_steps",   "seeds",
    "buffer_capacity", "batch",    "weighting",   "discriminator_flipped",
    "smoothing_window", "qvi_tol", "qvi_max_iter", "out_dir"};

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("(root)", "config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!kKnownFields.count(key)) throw ConfigError(key, "unknown field");

    ExperimentConfig cfg;
    cfg.name = j.value("name", std::string{});

    if (!j.contains("env")) throw ConfigError("env", "required");
    cfg.env = j.at("env");
    if (cfg.env.is_object() && cfg.env.contains("path")) {
        const std::string path = cfg.env.at("path").get<std::string>();
        std::ifstream f(path);
        if (!f) throw ConfigError("env.path", "cannot open '" + path + "'");
        try {
            cfg.env = json::parse(f);
        } catch (const std::exception& e) {
            throw ConfigError("env.path", std::string("invalid JSON: ") + e.what());
        }
    }

    if (!j.contains("algorithm")) throw ConfigError("algorithm", "required");
    cfg.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());

    // Entropy parameters.
    if (j.contains("eta") && j.contains("etas"))
        throw ConfigError("etas", "give either 'eta' or 'etas', not both");
    if (j.contains("eta")) cfg.etas = {eta_from_json(j.at("eta"), "eta")};
    if (j.contains("etas")) {
        if (!j.at("etas").is_array() || j.at("etas").empty())
            throw ConfigError("etas", "expected a non-empty array");
        cfg.etas.clear();
        for (const auto& v : j.at("etas")) cfg.etas.push_back(eta_from_json(v, "etas"));
    }
    switch (cfg.algorithm) {
        case Algorithm::Qvi:
        case Algorithm::Sql:
            if (!j.contains("eta") && !j.contains("etas"))
                throw ConfigError("eta", "required for " + algorithm_name(cfg.algorithm));
            break;
        case Algorithm::QLearning:
            // Plain Q-learning is soft Q-learning at eta = +inf.
            if ((j.contains("eta") || j.contains("etas")) &&
                !(cfg.etas.size() == 1 && cfg.etas[0].is_pos_inf()))
                throw ConfigError("eta", "q_learning is fixed at eta = inf");
            cfg.etas = {EntropyParam::pos_inf()};
            break;
        case Algorithm::Dmp:
        case Algorithm::SoftDmpOne:
        case Algorithm::SoftDmpSep:
            if (j.contains("eta") || j.contains("etas"))
                throw ConfigError("eta", "dual-module algorithms use eta_plus/eta_minus");
            break;
    }
    if (cfg.is_softdmp()) {
        if (cfg.algorithm == Algorithm::Dmp) {
            cfg.eta_plus = EntropyParam::pos_inf();
            cfg.eta_minus = EntropyParam::neg_inf();
            if (j.contains("eta_plus") && !eta_from_json(j.at("eta_plus"), "eta_plus").is_pos_inf())
                throw ConfigError("eta_plus", "dmp is fixed at eta_plus = inf");
            if (j.contains("eta_minus") &&
                !eta_from_json(j.at("eta_minus"), "eta_minus").is_neg_inf())
                throw ConfigError("eta_minus", "dmp is fixed at eta_minus = -inf");
        } else {
            if (!j.contains("eta_plus")) throw ConfigError("eta_plus", "required");
            if (!j.contains("eta_minus")) throw ConfigError("eta_minus", "required");
            cfg.eta_plus = eta_from_json(j.at("eta_plus"), "eta_plus");
            cfg.eta_minus = eta_from_json(j.at("eta_minus"), "eta_minus");
            if (cfg.eta_plus.is_negative()) throw ConfigError("eta_plus", "must be >= 0");
            if (cfg.eta_minus.is_positive()) throw ConfigError("eta_minus", "must be <= 0");
        }
    } else if (j.contains("eta_plus") || j.contains("eta_minus")) {
        throw ConfigError("eta_plus", "only dual-module algorithms take eta_plus/eta_minus");
    }

    cfg.alpha = number_field(j, "alpha", cfg.alpha);
    cfg.alpha_plus = number_field(j, "alpha_plus", cfg.alpha_plus);
    cfg.alpha_minus = number_field(j, "alpha_minus", cfg.alpha_minus);
    cfg.gamma = number_field(j, "gamma", cfg.gamma);
    cfg.gamma_plus = number_field(j, "gamma_plus", cfg.gamma_plus);
    cfg.gamma_minus = number_field(j, "gamma_minus", cfg.gamma_minus);
    for (auto [name, value] : {std::pair<const char*, double>{"alpha", cfg.alpha},
                               {"alpha_plus", cfg.alpha_plus},
                               {"alpha_minus", cfg.alpha_minus}})
        if (value <= 0.0 || value > 1.0) throw ConfigError(name, "must lie in (0, 1]");
    for (auto [name, value] : {std::pair<const char*, double>{"gamma", cfg.gamma},
                               {"gamma_plus", cfg.gamma_plus},
                               {"gamma_minus", cfg.gamma_minus}})
        if (value < 0.0 || value >= 1.0) throw ConfigError(name, "must lie in [0, 1)");

    cfg.episodes = int_field(j, "episodes", cfg.episodes);
    if (cfg.episodes < 1) throw ConfigError("episodes", "must be >= 1");
    cfg.max_steps = int_field(j, "max_steps", cfg.max_steps);
    if (cfg.max_steps < 1) throw ConfigError("max_steps", "must be >= 1");
    if (cfg.is_learning() && !j.contains("episodes"))
        throw ConfigError("episodes", "required for learning algorithms");

    if (j.contains("seeds")) {
        if (!j.at("seeds").is_array() || j.at("seeds").empty())
            throw ConfigError("seeds", "expected a non-empty array");
        cfg.seeds.clear();
        for (const auto& v : j.at("seeds")) {
            if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
                throw ConfigError("seeds", "seeds must be non-negative integers");
            cfg.seeds.push_back(v.get<std::uint64_t>());
        }
    }

    if (j.contains("buffer_capacity")) {
        const int cap = int_field(j, "buffer_capacity", 0);
        if (cap < 1) throw ConfigError("buffer_capacity", "must be >= 1");
        cfg.buffer_capacity = static_cast<std::size_t>(cap);
    }
    cfg.batch = int_field(j, "batch", cfg.batch);
    if (cfg.batch < 1) throw ConfigError("batch", "must be >= 1");

    if (j.contains("weighting")) {
        const json& w = j.at("weighting");
        if (w.is_string() && w.get<std::string>() == "hardmax") {
            cfg.weighting = Weighting::hardmax();
        } else if (w.is_object() && w.value("mode", "") == "hardmax") {
            cfg.weighting = Weighting::hardmax();
        } else if (w.is_object() && w.value("mode", "") == "fixed_w") {
            if (!w.contains("w") || !w.at("w").is_number())
                throw ConfigError("weighting.w", "fixed_w needs a numeric 'w'");
            const double wv = w.at("w").get<double>();
            if (wv < 0.0 || wv > 1.0) throw ConfigError("weighting.w", "must lie in [0, 1]");
            cfg.weighting = Weighting::fixed(wv);
        } else {
            throw ConfigError("weighting", "expected 'hardmax' or {mode: fixed_w, w: ...}");
        }
    }

    if (j.contains("discriminator_flipped")) {
        if (!j.at("discriminator_flipped").is_boolean())
            throw ConfigError("discriminator_flipped", "expected a boolean");
        cfg.discriminator_flipped = j.at("discriminator_flipped").get<bool>();
    }

    cfg.smoothing_window = int_field(j, "smoothing_window", cfg.smoothing_window);
    if (cfg.smoothing_window < 1) throw ConfigError("smoothing_window", "must be >= 1");

    cfg.qvi_tol = number_field(j, "qvi_tol", cfg.qvi_tol);
    if (cfg.qvi_tol <= 0.0) throw ConfigError("qvi_tol", "must be positive");
    cfg.qvi_max_iter = int_field(j, "qvi_max_iter", cfg.qvi_max_iter);
    if (cfg.qvi_max_iter < 1) throw ConfigError("qvi_max_iter", "must be >= 1");

    cfg.out_dir = j.value("out_dir", std::string{});

    // Fail early on a bad env spec so the diagnostic names the field.
    try {
        build_env(cfg.env, cfg.gamma);
    } catch (const std::exception& e) {
        throw ConfigError("env", e.what());
    }
    return cfg;
}

json ExperimentConfig::to_json() const {
    json j;
    j["name"] = name;
    j["env"] = env;
    j["algorithm"] = algorithm_name(algorithm);
    if (algorithm == Algorithm::Qvi || algorithm == Algorithm::Sql ||
        algorithm == Algorithm::QLearning) {
        json etas_json = json::array();
        for (const auto& e : etas) etas_json.push_back(e.str());
        j["etas"] = std::move(etas_json);
    }
    if (is_softdmp()) {
        j["eta_plus"] = eta_plus.str();
        j["eta_minus"] = eta_minus.str();
        j["alpha_plus"] = alpha_plus;
        j["alpha_minus"] = alpha_minus;
        j["gamma_plus"] = gamma_plus;
        j["gamma_minus"] = gamma_minus;
        j["buffer_capacity"] = buffer_capacity;
        j["batch"] = batch;
        j["weighting"] = weighting.mode == Weighting::Mode::FixedW
                             ? json{{"mode", "fixed_w"}, {"w", weighting.w}}
                             : json{{"mode", "hardmax"}};
        j["discriminator_flipped"] = discriminator_flipped;
    }
    if (algorithm == Algorithm::Sql || algorithm == Algorithm::QLearning) j["alpha"] = alpha;
    j["gamma"] = gamma;
    if (is_learning()) {
        j["episodes"] = episodes;
        j["max_steps"] = max_steps;
        j["smoothing_window"] = smoothing_window;
    } else {
        j["qvi_tol"] = qvi_tol;
        j["qvi_max_iter"] = qvi_max_iter;
    }
    j["seeds"] = seeds;
    if (!out_dir.empty()) j["out_dir"] = out_dir;
    return j;
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

namespace {

/// Single-eta view of a config: sql sweeps run once per entry of etas.
EntropyParam learning_eta(const ExperimentConfig& cfg) { return cfg.etas.front(); }

SeedResult run_sql_seed(const ExperimentConfig& cfg, const EnvModel& env, EntropyParam eta,
                        std::uint64_t seed, QTable* q_out) {
    SqlAgent agent(env.mdp.n_states, env.mdp.n_actions, eta, cfg.alpha, cfg.gamma);
    Rng rng(seed);
    Simulator sim(env.mdp);
    std::vector<EpisodeRecord> records;
    records.reserve(static_cast<std::size_t>(cfg.episodes));
    SeedResult result;
    result.seed = seed;
    for (int ep = 0; ep < cfg.episodes; ++ep) {
        int s = sim.reset(rng);
        EpisodeRecord rec;
        rec.episode = ep;
        for (int t = 0; t < cfg.max_steps; ++t) {
            const int a = agent.act(s, rng);
            const auto st = sim.step(a, rng);
            agent.observe(Experience{s, a, st.reward, st.next, st.terminal});
            ++rec.steps;
            rec.total_reward += st.reward;
            if (st.reward < 0.0) ++rec.collisions;
            s = st.next;
            if (st.terminal) {
                rec.reached_goal = true;
                result.reached_goal_ever = true;
                break;
            }
        }
        records.push_back(rec);
    }
    if (q_out) *q_out = agent.q();
    result.summary = RunSummary::from_records(std::move(records), cfg.smoothing_window);
    return result;
}

SeedResult run_softdmp_seed(const ExperimentConfig& cfg, const EnvModel& env, std::uint64_t seed,
                            QTable* q_plus_out, QTable* q_minus_out) {
    SoftDmpOptions opts;
    opts.eta_plus = cfg.eta_plus;
    opts.eta_minus = cfg.eta_minus;
    opts.alpha_plus = cfg.alpha_plus;
    opts.alpha_minus = cfg.alpha_minus;
    opts.gamma_plus = cfg.gamma_plus;
    opts.gamma_minus = cfg.gamma_minus;
    opts.weighting = cfg.weighting;
    opts.buffer_capacity = cfg.buffer_capacity;
    opts.batch = cfg.batch;
    opts.separate_buffers = cfg.algorithm == Algorithm::SoftDmpSep;
    opts.discriminator_flipped = cfg.discriminator_flipped;

    SoftDmpAgent agent(env.mdp.n_states, env.mdp.n_actions, opts);
    Rng rng(seed);
    Simulator sim(env.mdp);
    std::vector<EpisodeRecord> records;
    records.reserve(static_cast<std::size_t>(cfg.episodes));
    SeedResult result;
    result.seed = seed;
    for (int ep = 0; ep < cfg.episodes; ++ep) {
        int s = sim.reset(rng);
        EpisodeRecord rec;
        rec.episode = ep;
        for (int t = 0; t < cfg.max_steps; ++t) {
            const int a = agent.act(s, rng);
            const auto st = sim.step(a, rng);
            agent.observe(Experience{s, a, st.reward, st.next, st.terminal}, rng);
            ++rec.steps;
            rec.total_reward += st.reward;
            if (st.reward < 0.0) ++rec.collisions;
            s = st.next;
            if (st.terminal) {
                rec.reached_goal = true;
                result.reached_goal_ever = true;
                break;
            }
        }
        records.push_back(rec);
    }
    if (q_plus_out) *q_plus_out = agent.state().q_plus;
    if (q_minus_out) *q_minus_out = agent.state().q_minus;
    result.routed_minus = agent.routed_minus_count();
    result.ingested = agent.ingested_count();
    result.summary = RunSummary::from_records(std::move(records), cfg.smoothing_window);
    return result;
}

std::string summary_csv(const std::vector<SeedResult>& results) {
    std::string out =
        "seed,episodes,avg_step_length,collision_rate_per_step,collisions_per_episode,"
        "goals_reached,routed_minus,ingested\n";
    for (const auto& r : results) {
        int goals = 0;
        for (const auto& rec : r.summary.records) goals += rec.reached_goal ? 1 : 0;
        out += std::to_string(r.seed);
        out += ',';
        out += std::to_string(r.summary.records.size());
        out += ',';
        out += format_float(r.summary.avg_step_length);
        out += ',';
        out += format_float(r.summary.collision_rate);
        out += ',';
        out += format_float(r.summary.collisions_per_episode);
        out += ',';
        out += std::to_string(goals);
        out += ',';
        out += std::to_string(r.routed_minus);
        out += ',';
        out += std::to_string(r.ingested);
        out += '\n';
    }
    return out;
}

}  // namespace

SeedResult run_learning_seed(const ExperimentConfig& cfg, const EnvModel& env,
                             std::uint64_t seed) {
    if (cfg.is_softdmp()) return run_softdmp_seed(cfg, env, seed, nullptr, nullptr);
    return run_sql_seed(cfg, env, learning_eta(cfg), seed, nullptr);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);
    ExperimentResult result;
    auto emit = [&](const std::string& filename, const std::string& content) {
        const std::string path = (fs::path(out_dir) / filename).string();
        write_file(path, content);
        result.files_written.push_back(path);
    };

    emit("manifest.json", cfg.to_json().dump(2) + "\n");

    const EnvModel env = build_env(cfg.env, cfg.gamma);

    if (cfg.algorithm == Algorithm::Qvi) {
        for (const auto& eta : cfg.etas) {
            const PlanResult plan = soft_qvi(env.mdp, eta, cfg.qvi_tol, cfg.qvi_max_iter);
            if (!plan.converged) throw QviNotConverged(plan.residual, plan.iterations);
            const PolicySets sets = derive_policies(plan, eta);
            emit("values_eta" + eta.str() + ".csv", values_csv(plan, env.action_names));
            emit("policies_eta" + eta.str() + ".csv", policies_csv(sets, env.action_names));
        }
        return result;
    }

    if (cfg.is_softdmp()) {
        std::vector<RunSummary> summaries;
        for (const std::uint64_t seed : cfg.seeds) {
            QTable q_plus, q_minus;
            SeedResult r = run_softdmp_seed(cfg, env, seed, &q_plus, &q_minus);
            emit("run_seed" + std::to_string(seed) + ".csv", run_csv(r.summary));
            emit("values_plus_seed" + std::to_string(seed) + ".csv",
                 qtable_values_csv(q_plus, cfg.eta_plus, env.action_names));
            emit("values_minus_seed" + std::to_string(seed) + ".csv",
                 qtable_values_csv(q_minus, cfg.eta_minus, env.action_names));
            summaries.push_back(r.summary);
            result.seed_results.push_back(std::move(r));
        }
        emit("aggregate.csv", aggregate_csv(aggregate_trials(summaries)));
        emit("summary.csv", summary_csv(result.seed_results));
        return result;
    }

    // sql / q_learning, one pass per eta in the sweep
    for (const auto& eta : cfg.etas) {
        const std::string tag = "_eta" + eta.str();
        std::vector<RunSummary> summaries;
        std::vector<SeedResult> eta_results;
        for (const std::uint64_t seed : cfg.seeds) {
            QTable q;
            SeedResult r = run_sql_seed(cfg, env, eta, seed, &q);
            emit("run" + tag + "_seed" + std::to_string(seed) + ".csv", run_csv(r.summary));
            emit("values" + tag + "_seed" + std::to_string(seed) + ".csv",
                 qtable_values_csv(q, eta, env.action_names));
            summaries.push_back(r.summary);
            eta_results.push_back(r);
            result.seed_results.push_back(std::move(r));
        }
        emit("aggregate" + tag + ".csv", aggregate_csv(aggregate_trials(summaries)));
        emit("summary" + tag + ".csv", summary_csv(eta_results));
    }
    return result;
}

}  // namespace softdmp
