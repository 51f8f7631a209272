#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "adarefiner/craftworld/world.hpp"
#include "adarefiner/gateway/backend.hpp"
#include "adarefiner/policy/ppo.hpp"
#include "adarefiner/textembed/embed.hpp"

namespace adarefiner {

struct ScoreConfig {
    bool binary = false;  // [cosine > 0.5] instead of the raw cosine
};

struct SftConfig {
    int n_sft = 1000;
    int capacity = 50000;
    std::string hook_url;  // optional fine-tune callback for http backends
};

struct LoopConfig {
    std::uint64_t seed = 0;
    std::int64_t total_steps = 100000;
    int n_gen = 20;
    int buffer_capacity = 10000;
    int prompt_actions = 5;        // recent actions quoted in prompts
    int prompt_goals = 6;          // recent sub-goal lines quoted in prompts
    int probs_log_interval = 1000; // steps between policy-distribution probes

    // Ablation switches, plus the pure-PPO reference configuration.
    bool no_l_score = false;
    bool no_adapter = false;
    bool binary_score = false;  // overrides score.binary when set
    bool no_llm = false;
};

struct EvalConfig {
    int episodes = 500;
    bool argmax = false;  // sampled actions by default, matching training
};

struct RunConfig {
    env::WorldConfig env;
    text::EmbedConfig embed;
    ScoreConfig score;
    llm::BackendSpec adapter;
    llm::BackendSpec decision;
    SftConfig sft;
    rl::PpoHyperparams ppo;
    LoopConfig loop;
    EvalConfig eval;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strict INI: [section] headers, key = value lines, '#'/';' comments.
// Unknown sections or keys throw ConfigError naming the key path.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

// Sets a single "section.key" path; same validation as the file parser.
void apply_override(RunConfig& config, const std::string& key_path,
                    const std::string& value);

// Every key with its effective value; parse_config_text round-trips it.
std::string render_config(const RunConfig& config);

}  // namespace adarefiner
