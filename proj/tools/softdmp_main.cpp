// Command-line experiment runner.
//
//   softdmp run <config.json> [--out DIR]
//   softdmp preset <name> [--seed-override S...] [--out DIR]
//   softdmp list-presets
//
// Output root resolution: --out wins; otherwise $SOFTDMP_OUT_ROOT/<name>,
// falling back to ./out/<name>.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "softdmp/experiment.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace softdmp;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNotConverged = 3;

std::string default_out_dir(const std::string& name) {
    const char* root = std::getenv("SOFTDMP_OUT_ROOT");
    const fs::path base = root && *root ? fs::path(root) : fs::path("out");
    return (base / name).string();
}

int execute(const ExperimentConfig& cfg, const std::string& out_dir) {
    const ExperimentResult result = run_experiment(cfg, out_dir);
    std::cout << cfg.name << ": wrote " << result.files_written.size() << " files to " << out_dir
              << "\n";
    return 0;
}

int run_config_file(const std::string& path, const std::string& out_override) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "error: cannot open config '" << path << "'\n";
        return kExitConfigError;
    }
    json j;
    try {
        j = json::parse(f);
    } catch (const std::exception& e) {
        std::cerr << "error: invalid JSON in '" << path << "': " << e.what() << "\n";
        return kExitConfigError;
    }
    ExperimentConfig cfg = ExperimentConfig::from_json(j);
    std::string out_dir = !out_override.empty() ? out_override
                          : !cfg.out_dir.empty()
                              ? cfg.out_dir
                              : default_out_dir(cfg.name.empty() ? "run" : cfg.name);
    return execute(cfg, out_dir);
}

int run_preset(const std::string& name, const std::vector<std::uint64_t>& seed_override,
               const std::string& out_override) {
    const Preset* preset = find_preset(name);
    if (!preset) {
        std::cerr << "error: unknown preset '" << name << "' (see list-presets)\n";
        return kExitConfigError;
    }
    const std::string root = !out_override.empty() ? out_override : default_out_dir(preset->name);
    for (const auto& run : preset->runs) {
        json j = run.config;
        if (!seed_override.empty()) j["seeds"] = seed_override;
        ExperimentConfig cfg = ExperimentConfig::from_json(j);
        const std::string out_dir =
            run.subdir.empty() ? root : (fs::path(root) / run.subdir).string();
        const int rc = execute(cfg, out_dir);
        if (rc != 0) return rc;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"softDMP tabular reinforcement-learning lab"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config");
    run_cmd->add_option("config", config_path, "path to config JSON")->required();
    run_cmd->add_option("--out", out_dir, "output directory");

    std::string preset_name;
    std::vector<std::uint64_t> seed_override;
    std::string preset_out;
    auto* preset_cmd = app.add_subcommand("preset", "run a shipped experiment preset");
    preset_cmd->add_option("name", preset_name, "preset name")->required();
    preset_cmd->add_option("--seed-override", seed_override, "replace the preset's seed list");
    preset_cmd->add_option("--out", preset_out, "output directory");

    auto* list_cmd = app.add_subcommand("list-presets", "list shipped presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return run_config_file(config_path, out_dir);
        if (preset_cmd->parsed()) return run_preset(preset_name, seed_override, preset_out);
        if (list_cmd->parsed()) {
            for (const auto& p : presets())
                std::cout << p.name << "\t" << p.description << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const QviNotConverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotConverged;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
