#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "adarefiner/config.hpp"

namespace adarefiner::loop {

struct TrainResult {
    std::int64_t steps = 0;
    std::int64_t decision_calls = 0;
    std::int64_t adapter_calls = 0;
    std::int64_t dropped_queries = 0;
    std::int64_t sft_triggers = 0;
    std::int64_t sft_pairs = 0;
    std::int64_t ppo_updates = 0;
    std::int64_t episodes = 0;
    double mean_episode_return = 0.0;  // over completed episodes
    std::string checkpoint_path;
};

bool should_query(std::int64_t t, int n_gen);

// Runs the full training loop for config.loop.total_steps steps, writing
// run artifacts (config-resolved.ini, steps.csv, episodes.csv, probs.csv,
// sft-dataset.jsonl, checkpoints/final.ckpt) under run_dir.
TrainResult train(const RunConfig& config,
                  const std::filesystem::path& run_dir);

}  // namespace adarefiner::loop
