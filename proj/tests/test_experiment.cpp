#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "softdmp/experiment.hpp"

using namespace softdmp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json tiny_grid_env() {
    return json{{"type", "grid"},
                {"map", {"S.#", "..G"}},
                {"collision_reward", -0.5},
                {"goal_reward", 5.0}};
}

json chain_env() { return json{{"type", "chain"}, {"length", 5}, {"edge_reward", -0.1}}; }

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("softdmp_test_" + tag);
    fs::remove_all(dir);
    return dir;
}

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file())
            out[fs::relative(entry.path(), dir).string()] = slurp(entry.path());
    return out;
}

}  // namespace

TEST_CASE("config parsing: diagnostics name the offending field") {
    auto field_of = [](const json& j) {
        try {
            ExperimentConfig::from_json(j);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string("(no error)");
    };

    CHECK(field_of(json{{"algorithm", "sql"}}) == "env");
    CHECK(field_of(json{{"env", chain_env()}}) == "algorithm");
    CHECK(field_of(json{{"env", chain_env()}, {"algorithm", "dqn"}}) == "algorithm");
    CHECK(field_of(json{{"env", chain_env()}, {"algorithm", "sql"}}) == "eta");
    CHECK(field_of(json{{"env", chain_env()},
                        {"algorithm", "sql"},
                        {"eta", "0"},
                        {"episodes", 1},
                        {"alpha", 2.0}}) == "alpha");
    CHECK(field_of(json{{"env", chain_env()},
                        {"algorithm", "sql"},
                        {"eta", "0"},
                        {"episodes", 1},
                        {"gamma", 1.0}}) == "gamma");
    CHECK(field_of(json{{"env", chain_env()}, {"algorithm", "sql"}, {"eta", "0"}}) == "episodes");
    CHECK(field_of(json{{"env", chain_env()},
                        {"algorithm", "sql"},
                        {"eta", "0"},
                        {"episodes", 1},
                        {"seeds", json::array()}}) == "seeds");
    CHECK(field_of(json{{"env", chain_env()},
                        {"algorithm", "softdmp_sep"},
                        {"episodes", 1}}) == "eta_plus");
    CHECK(field_of(json{{"env", chain_env()},
                        {"algorithm", "softdmp_sep"},
                        {"eta_plus", 10},
                        {"eta_minus", 3},
                        {"episodes", 1}}) == "eta_minus");
    CHECK(field_of(json{{"env", chain_env()},
                        {"algorithm", "q_learning"},
                        {"eta", "-inf"},
                        {"episodes", 1}}) == "eta");
    CHECK(field_of(json{{"env", chain_env()},
                        {"algorithm", "qvi"},
                        {"eta", "0"},
                        {"typo_field", 1}}) == "typo_field");
    CHECK(field_of(json{{"env", json{{"type", "grid"}}}, {"algorithm", "qvi"}, {"eta", "0"}}) ==
          "env");
    CHECK(field_of(json{{"env", chain_env()},
                        {"algorithm", "softdmp_one"},
                        {"eta_plus", 10},
                        {"eta_minus", -10},
                        {"episodes", 1},
                        {"weighting", json{{"mode", "fixed_w"}, {"w", 2.0}}}}) == "weighting.w");

    // a valid config parses
    const ExperimentConfig cfg = ExperimentConfig::from_json(json{{"env", chain_env()},
                                                                  {"algorithm", "sql"},
                                                                  {"eta", "-inf"},
                                                                  {"episodes", 2},
                                                                  {"seeds", {1, 2}}});
    CHECK(cfg.algorithm == Algorithm::Sql);
    CHECK(cfg.etas.size() == 1);
    CHECK(cfg.etas[0].is_neg_inf());
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("config: eta serialization round-trips through the manifest") {
    const json j = {{"env", chain_env()},
                    {"algorithm", "sql"},
                    {"etas", {"-inf", "-0.01", "0", "1000", "inf"}},
                    {"episodes", 1},
                    {"seeds", {0}}};
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);
    const json out = cfg.to_json();
    CHECK(out.at("etas") == json({"-inf", "-0.01", "0", "1000", "inf"}));
    const ExperimentConfig back = ExperimentConfig::from_json(out);
    CHECK(back.etas.size() == 5);
    CHECK(back.etas[0].is_neg_inf());
    CHECK(back.etas[1].value() == -0.01);
    CHECK(back.etas[4].is_pos_inf());
}

TEST_CASE("run_experiment: byte-identical reruns and manifest round-trip") {
    const json j = {{"env", tiny_grid_env()},
                    {"algorithm", "softdmp_sep"},
                    {"eta_plus", 100},
                    {"eta_minus", -100},
                    {"episodes", 20},
                    {"max_steps", 50},
                    {"seeds", {3, 4}},
                    {"buffer_capacity", 128},
                    {"batch", 8}};
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);

    const fs::path dir1 = fresh_dir("rerun1");
    const fs::path dir2 = fresh_dir("rerun2");
    run_experiment(cfg, dir1.string());
    run_experiment(cfg, dir2.string());
    CHECK(dir_contents(dir1) == dir_contents(dir2));

    // the manifest re-ingested as a config reproduces the run
    const json manifest = json::parse(slurp(dir1 / "manifest.json"));
    const ExperimentConfig again = ExperimentConfig::from_json(manifest);
    const fs::path dir3 = fresh_dir("rerun3");
    run_experiment(again, dir3.string());
    CHECK(dir_contents(dir1) == dir_contents(dir3));

    fs::remove_all(dir1);
    fs::remove_all(dir2);
    fs::remove_all(dir3);
}

TEST_CASE("run_experiment: qvi writes value and policy tables per eta") {
    const json j = {{"env", chain_env()}, {"algorithm", "qvi"}, {"etas", {"-inf", "0", "inf"}}};
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);
    const fs::path dir = fresh_dir("qvi");
    const ExperimentResult res = run_experiment(cfg, dir.string());
    CHECK(fs::exists(dir / "manifest.json"));
    for (const char* tag : {"-inf", "0", "inf"}) {
        CHECK(fs::exists(dir / ("values_eta" + std::string(tag) + ".csv")));
        CHECK(fs::exists(dir / ("policies_eta" + std::string(tag) + ".csv")));
    }
    CHECK(res.files_written.size() == 7);

    // per-state rows with header
    const std::string values = slurp(dir / "values_eta-inf.csv");
    CHECK(values.substr(0, values.find('\n')) == "state,v,q_left,q_right,q_stop");
    CHECK(std::count(values.begin(), values.end(), '\n') == 6);  // header + 5 states
    fs::remove_all(dir);
}

TEST_CASE("run_experiment: sql eta sweeps emit per-eta artifacts") {
    const json j = {{"env", chain_env()},   {"algorithm", "sql"}, {"etas", {"-1", "1"}},
                    {"alpha", 0.2},         {"episodes", 5},      {"max_steps", 20},
                    {"seeds", {0, 1}}};
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);
    const fs::path dir = fresh_dir("sweep");
    const ExperimentResult res = run_experiment(cfg, dir.string());
    CHECK(res.seed_results.size() == 4);  // 2 etas x 2 seeds
    for (const char* tag : {"-1", "1"}) {
        for (int seed : {0, 1}) {
            CHECK(fs::exists(dir / ("run_eta" + std::string(tag) + "_seed" +
                                    std::to_string(seed) + ".csv")));
            CHECK(fs::exists(dir / ("values_eta" + std::string(tag) + "_seed" +
                                    std::to_string(seed) + ".csv")));
        }
        CHECK(fs::exists(dir / ("aggregate_eta" + std::string(tag) + ".csv")));
        CHECK(fs::exists(dir / ("summary_eta" + std::string(tag) + ".csv")));
    }
    fs::remove_all(dir);
}

TEST_CASE("run_experiment: qvi signals non-convergence") {
    const json j = {{"env", chain_env()},
                    {"algorithm", "qvi"},
                    {"eta", "-inf"},
                    {"qvi_max_iter", 2}};
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);
    const fs::path dir = fresh_dir("qvi_fail");
    CHECK_THROWS_AS(run_experiment(cfg, dir.string()), QviNotConverged);
    fs::remove_all(dir);
}

TEST_CASE("run_experiment: learning artifacts and aggregate shape") {
    const json j = {{"env", tiny_grid_env()}, {"algorithm", "q_learning"}, {"episodes", 10},
                    {"max_steps", 30},        {"seeds", {1, 2, 3}},        {"alpha", 0.1}};
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);
    const fs::path dir = fresh_dir("learn");
    const ExperimentResult res = run_experiment(cfg, dir.string());
    CHECK(res.seed_results.size() == 3);
    for (int seed : {1, 2, 3}) {
        CHECK(fs::exists(dir / ("run_etainf_seed" + std::to_string(seed) + ".csv")));
        CHECK(fs::exists(dir / ("values_etainf_seed" + std::to_string(seed) + ".csv")));
    }
    const std::string agg = slurp(dir / "aggregate_etainf.csv");
    CHECK(agg.substr(0, agg.find('\n')) ==
          "episode,mean_steps,se_steps,mean_collisions,se_collisions");
    CHECK(std::count(agg.begin(), agg.end(), '\n') == 11);  // header + 10 episodes
    const std::string summary = slurp(dir / "summary_etainf.csv");
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 4);  // header + 3 seeds
    fs::remove_all(dir);
}

TEST_CASE("presets: every shipped experiment is present and well-formed") {
    std::vector<std::string> names;
    for (const auto& p : presets()) names.push_back(p.name);
    for (const char* required : {"fig1-max", "fig1-min", "fig2-policies", "fig3-qlearning",
                                 "fig5", "maze-compare"})
        CHECK(std::find(names.begin(), names.end(), required) != names.end());

    for (const auto& p : presets()) {
        CHECK_FALSE(p.description.empty());
        CHECK_FALSE(p.runs.empty());
        for (const auto& run : p.runs) {
            // every preset config validates
            const ExperimentConfig cfg = ExperimentConfig::from_json(run.config);
            CHECK_FALSE(cfg.seeds.empty());
        }
    }

    const Preset* maze = find_preset("maze-compare");
    REQUIRE(maze != nullptr);
    CHECK(maze->runs.size() == 5);
    std::vector<std::string> subdirs;
    for (const auto& run : maze->runs) subdirs.push_back(run.subdir);
    CHECK(subdirs == std::vector<std::string>{"dqn", "sql", "dmp", "softdmp_one", "softdmp_sep"});
    CHECK(find_preset("nope") == nullptr);

    const Preset* fig5 = find_preset("fig5");
    REQUIRE(fig5 != nullptr);
    const ExperimentConfig cfg5 = ExperimentConfig::from_json(fig5->runs[0].config);
    CHECK(cfg5.etas.size() == 15);
}

TEST_CASE("shipped config files mirror the embedded presets") {
    const fs::path configs = fs::path(SOFTDMP_SOURCE_DIR) / "configs";
    REQUIRE(fs::exists(configs));
    for (const auto& p : presets()) {
        for (const auto& run : p.runs) {
            const std::string name =
                run.subdir.empty() ? p.name + ".json" : p.name + "_" + run.subdir + ".json";
            const fs::path file = configs / name;
            REQUIRE(fs::exists(file));
            CHECK(json::parse(slurp(file)) == run.config);
        }
    }
    // standalone env specs match the presets that embed them
    CHECK(json::parse(slurp(configs / "envs" / "umaze_grid.json")) ==
          find_preset("fig1-min")->runs[0].config.at("env"));
    CHECK(json::parse(slurp(configs / "envs" / "umaze_nav.json")) ==
          find_preset("maze-compare")->runs[0].config.at("env"));
    CHECK(json::parse(slurp(configs / "envs" / "chain21.json")) ==
          find_preset("fig5")->runs[0].config.at("env"));
}

TEST_CASE("config env can be loaded from a file path") {
    const fs::path envfile = fs::path(SOFTDMP_SOURCE_DIR) / "configs" / "envs" / "chain21.json";
    const json j = {{"env", {{"path", envfile.string()}}},
                    {"algorithm", "qvi"},
                    {"eta", "-inf"}};
    const ExperimentConfig cfg = ExperimentConfig::from_json(j);
    CHECK(cfg.env.at("type") == "chain");  // inlined after resolution
    CHECK(cfg.env.at("length") == 21);

    const json missing = {{"env", {{"path", "/nonexistent/env.json"}}},
                          {"algorithm", "qvi"},
                          {"eta", "0"}};
    CHECK_THROWS_AS(ExperimentConfig::from_json(missing), ConfigError);
}
