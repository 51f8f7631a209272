#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "adarefiner/config.hpp"
#include "adarefiner/evalkit/metrics.hpp"
#include "adarefiner/policy/checkpoint.hpp"

namespace adarefiner::evalkit {

struct EvalReport {
    int episodes = 0;
    std::map<env::Achievement, double> success_rates;
    double score = 0.0;
    double mean_reward = 0.0;
    double reward_std = 0.0;  // across episodes
    int achievements_completed = 0;
    int max_depth_completed = 0;
    double impossible_action_rate = 0.0;
    std::vector<double> episode_returns;
};

// Rolls out `episodes` episodes with per-episode env seeds base_seed,
// base_seed+1, ... using the configured backends and action rule.
EvalReport evaluate(const RunConfig& config, const rl::PolicyParams& policy,
                    int episodes, std::uint64_t base_seed);

// Loads the checkpoint (validating its fingerprint against the config) and
// evaluates it.
EvalReport evaluate_checkpoint(const std::filesystem::path& checkpoint,
                               const RunConfig& config, int episodes);

void write_eval_report(const EvalReport& report,
                       const std::filesystem::path& path);

}  // namespace adarefiner::evalkit
