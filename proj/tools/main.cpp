#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adarefiner/config.hpp"
#include "adarefiner/evalkit/curves.hpp"
#include "adarefiner/evalkit/evaluate.hpp"
#include "adarefiner/loop/orchestrator.hpp"
#include "adarefiner/sft/dataset.hpp"

namespace {

namespace fs = std::filesystem;
using adarefiner::ConfigError;
using adarefiner::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

RunConfig load_config(const std::string& path) {
    if (path.empty()) {
        return RunConfig{};
    }
    return adarefiner::parse_config_file(path);
}

int cmd_train(const std::string& config_path, std::int64_t steps,
              std::int64_t seed, const std::string& out_dir,
              const std::vector<std::string>& ablations,
              const std::vector<std::string>& overrides) {
    RunConfig config;
    try {
        config = load_config(config_path);
        if (steps >= 0) {
            config.loop.total_steps = steps;
        }
        if (seed >= 0) {
            config.loop.seed = static_cast<std::uint64_t>(seed);
        }
        for (const auto& name : ablations) {
            if (name == "no_l_score") {
                config.loop.no_l_score = true;
            } else if (name == "no_adapter") {
                config.loop.no_adapter = true;
            } else if (name == "binary_score") {
                config.loop.binary_score = true;
            } else if (name == "no_llm") {
                config.loop.no_llm = true;
            } else {
                throw ConfigError("unknown ablation: " + name);
            }
        }
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("override must be key=value: " + kv);
            }
            adarefiner::apply_override(config, kv.substr(0, eq),
                                       kv.substr(eq + 1));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const auto result = adarefiner::loop::train(config, out_dir);
        std::cout << "trained " << result.steps << " steps, "
                  << result.episodes << " episodes, mean return "
                  << result.mean_episode_return << ", checkpoint "
                  << result.checkpoint_path << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "training failed: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_eval(const std::string& checkpoint, const std::string& config_path,
             int episodes, const std::string& report_path) {
    RunConfig config;
    try {
        config = load_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!fs::exists(checkpoint)) {
        std::cerr << "checkpoint not found: " << checkpoint << "\n";
        return kExitUsage;
    }
    try {
        const auto report =
            adarefiner::evalkit::evaluate_checkpoint(checkpoint, config,
                                                     episodes);
        adarefiner::evalkit::write_eval_report(report, report_path);
        std::printf("score %.4f, mean reward %.4f +- %.4f over %d episodes\n",
                    report.score, report.mean_reward, report.reward_std,
                    report.episodes);
        return kExitOk;
    } catch (const adarefiner::rl::CheckpointError& e) {
        std::cerr << "checkpoint error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "evaluation failed: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_export_sft(const std::string& run_dir, const std::string& out_path) {
    const fs::path dataset_path = fs::path(run_dir) / "sft-dataset.jsonl";
    if (!fs::exists(dataset_path)) {
        std::cerr << "missing run artifact: " << dataset_path.string() << "\n";
        return kExitUsage;
    }
    try {
        adarefiner::sft::SftDataset dataset;
        for (auto& pair : adarefiner::sft::parse_sft_jsonl(dataset_path)) {
            dataset.append(std::move(pair));
        }
        adarefiner::sft::export_sft_jsonl(dataset, out_path);
        std::cout << "exported " << dataset.size() << " pairs to " << out_path
                  << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "export failed: " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_plot_data(const std::string& run_dir, const std::string& out_dir) {
    if (!fs::exists(fs::path(run_dir) / "steps.csv")) {
        std::cerr << "missing run artifact: "
                  << (fs::path(run_dir) / "steps.csv").string() << "\n";
        return kExitUsage;
    }
    try {
        adarefiner::evalkit::emit_curves(run_dir, out_dir);
        std::cout << "wrote plot data to " << out_dir << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "plot-data failed: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"goal-conditioned RL with LLM-refined sub-goals"};
    app.require_subcommand(1);

    std::string config_path;
    std::int64_t steps = -1;
    std::int64_t seed = -1;
    std::string out = "run";
    std::vector<std::string> ablations;
    std::vector<std::string> overrides;
    auto* train = app.add_subcommand("train", "run the training loop");
    train->add_option("--config", config_path, "config file (ini)");
    train->add_option("--steps", steps, "override loop.total_steps");
    train->add_option("--seed", seed, "override loop.seed");
    train->add_option("--out", out, "run directory");
    train->add_option("--ablation", ablations,
                      "no_l_score|no_adapter|binary_score|no_llm");
    train->add_option("--set", overrides, "section.key=value override");

    std::string checkpoint;
    int episodes = 500;
    std::string report = "eval-report.json";
    auto* eval = app.add_subcommand("eval", "evaluate a checkpoint");
    eval->add_option("--checkpoint", checkpoint, "checkpoint file")
        ->required();
    eval->add_option("--config", config_path, "config file (ini)");
    eval->add_option("--episodes", episodes, "inference episodes");
    eval->add_option("--report", report, "output report path");

    std::string run_dir;
    std::string export_path = "sft-export.jsonl";
    auto* export_sft = app.add_subcommand("export-sft",
                                          "export the SFT dataset");
    export_sft->add_option("--run", run_dir, "run directory")->required();
    export_sft->add_option("--out", export_path, "output jsonl path");

    std::string plot_run;
    std::string plot_out = "plots";
    auto* plot = app.add_subcommand("plot-data", "emit plot CSVs");
    plot->add_option("--run", plot_run, "run directory")->required();
    plot->add_option("--out", plot_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (train->parsed()) {
        return cmd_train(config_path, steps, seed, out, ablations, overrides);
    }
    if (eval->parsed()) {
        return cmd_eval(checkpoint, config_path, episodes, report);
    }
    if (export_sft->parsed()) {
        return cmd_export_sft(run_dir, export_path);
    }
    return cmd_plot_data(plot_run, plot_out);
}
