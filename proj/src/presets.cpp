#include "softdmp/experiment.hpp"

namespace softdmp {

using nlohmann::json;

namespace {

// 9x9 U-maze: a single inner wall on column 4 spanning rows 2-8 with a
// corridor over the top (row 1 open at column 4). Start and goal sit on
// opposite sides of the wall. Used both as the pure-punishment grid
// (collision -0.1, goal reward 0) and as the navigation surrogate
// (collision -0.5, goal +5).
const json kUmazeMap = json::array({
    ".........",
    ".........",
    "....#....",
    "....#....",
    "...S#G...",
    "....#....",
    "....#....",
    "....#....",
    "....#....",
});

// T-maze surrogate: a top corridor with a long stem; the goal sits at the
// end of the right arm.
const json kTmazeMap = json::array({
    "#########",
    "........G",
    "####.####",
    "####.####",
    "####.####",
    "####.####",
    "####.####",
    "####S####",
    "#########",
});

// Three-room surrogate: two dividing walls with offset doorways.
const json kThreeRoomMap = json::array({
    "#########",
    "#..#.#.G#",
    "#..#....#",
    "#..#.#..#",
    "#..#.#..#",
    "#..#.#..#",
    "#....#..#",
    "#S.#.#..#",
    "#########",
});

json umaze_grid_env() {
    return json{{"type", "grid"},
                {"map", kUmazeMap},
                {"collision_reward", -0.1},
                {"goal_reward", 0.0}};
}

json umaze_nav_env() {
    return json{{"type", "grid"},
                {"map", kUmazeMap},
                {"collision_reward", -0.5},
                {"goal_reward", 5.0}};
}

json tmaze_nav_env() {
    return json{{"type", "grid"},
                {"map", kTmazeMap},
                {"collision_reward", -0.5},
                {"goal_reward", 5.0}};
}

json threeroom_nav_env() {
    return json{{"type", "grid"},
                {"map", kThreeRoomMap},
                {"collision_reward", -0.5},
                {"goal_reward", 5.0}};
}

json chain_env() {
    return json{{"type", "chain"}, {"length", 21}, {"edge_reward", -0.1}};
}

json qvi_config(const std::string& name, json env, json etas) {
    return json{{"name", name},       {"env", std::move(env)},
                {"algorithm", "qvi"}, {"etas", std::move(etas)},
                {"gamma", 0.9},       {"seeds", {0}}};
}

json umaze_qlearning_config(const std::string& name, const std::string& eta) {
    return json{{"name", name},      {"env", umaze_grid_env()},
                {"algorithm", "sql"},{"eta", eta},
                {"alpha", 0.025},    {"gamma", 0.9},
                {"episodes", 2000},  {"max_steps", 500},
                {"seeds", {1, 2, 3, 4, 5}}, {"smoothing_window", 50}};
}

json maze_method_config(const std::string& name, const std::string& algorithm, json env) {
    json cfg{{"name", name},
             {"env", std::move(env)},
             {"algorithm", algorithm},
             {"episodes", 1000},
             {"max_steps", 500},
             {"seeds", {1, 2, 3, 4, 5}},
             {"smoothing_window", 50}};
    if (algorithm == "q_learning" || algorithm == "sql") {
        cfg["alpha"] = 0.025;
        cfg["gamma"] = 0.9;
        if (algorithm == "sql") cfg["eta"] = 0.0;
    } else {
        cfg["alpha_plus"] = 0.025;
        cfg["alpha_minus"] = 0.001;
        cfg["gamma_plus"] = 0.99;
        cfg["gamma_minus"] = 0.9;
        cfg["buffer_capacity"] = 10000;
        cfg["batch"] = 32;
        cfg["weighting"] = "hardmax";
        if (algorithm != "dmp") {
            cfg["eta_plus"] = 1000.0;
            cfg["eta_minus"] = -1000.0;
        }
    }
    return cfg;
}

std::vector<Preset::Run> maze_compare_runs(const json& env) {
    return {{"dqn", maze_method_config("dqn", "q_learning", env)},
            {"sql", maze_method_config("sql", "sql", env)},
            {"dmp", maze_method_config("dmp", "dmp", env)},
            {"softdmp_one", maze_method_config("softdmp_one", "softdmp_one", env)},
            {"softdmp_sep", maze_method_config("softdmp_sep", "softdmp_sep", env)}};
}

std::vector<Preset> build_presets() {
    std::vector<Preset> list;

    list.push_back(Preset{
        "fig1-max",
        "U-maze optimal state values under the max operator (QVI, eta = inf)",
        {{"", qvi_config("fig1-max", umaze_grid_env(), json::array({"inf"}))}}});

    list.push_back(Preset{
        "fig1-min",
        "U-maze optimal state values under the min operator (QVI, eta = -inf)",
        {{"", qvi_config("fig1-min", umaze_grid_env(), json::array({"-inf"}))}}});

    list.push_back(Preset{
        "fig2-policies",
        "U-maze greedy and flipped policies from the max- and min-operator Q tables",
        {{"", qvi_config("fig2-policies", umaze_grid_env(), json::array({"-inf", "inf"}))}}});

    list.push_back(Preset{
        "fig3-qlearning",
        "U-maze Q-learning curves: min operator with flipped policy vs max operator",
        {{"min", umaze_qlearning_config("fig3-qlearning-min", "-inf")},
         {"max", umaze_qlearning_config("fig3-qlearning-max", "inf")}}});

    json fig5 = json{{"name", "fig5"},
                     {"env", chain_env()},
                     {"algorithm", "sql"},
                     {"etas", {"-inf", "-1000", "-100", "-10", "-1", "-0.1", "-0.01", "0",
                               "0.01", "0.1", "1", "10", "100", "1000", "inf"}},
                     {"alpha", 0.1},
                     {"gamma", 0.9},
                     {"episodes", 5000},
                     {"max_steps", 100},
                     {"seeds", {0}},
                     {"smoothing_window", 50}};
    list.push_back(Preset{
        "fig5",
        "Chain-21 learned state values across the full entropy-parameter grid",
        {{"", std::move(fig5)}}});

    list.push_back(Preset{
        "maze-compare",
        "U-maze navigation surrogate: dqn / sql / dmp / softdmp_one / softdmp_sep, 5 seeds",
        maze_compare_runs(umaze_nav_env())});

    list.push_back(Preset{
        "maze-compare-tmaze",
        "T-maze navigation surrogate: dqn / sql / dmp / softdmp_one / softdmp_sep, 5 seeds",
        maze_compare_runs(tmaze_nav_env())});

    list.push_back(Preset{
        "maze-compare-threeroom",
        "Three-room navigation surrogate: dqn / sql / dmp / softdmp_one / softdmp_sep, 5 seeds",
        maze_compare_runs(threeroom_nav_env())});

    return list;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> list = build_presets();
    return list;
}

const Preset* find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

}  // namespace softdmp
