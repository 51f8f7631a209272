#include "adarefiner/craftworld/episode_log.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace adarefiner::env {

EpisodeRecorder::EpisodeRecorder(const std::string& path)
    : out_(path), path_(path) {
    if (!out_) {
        throw std::runtime_error("cannot open episode log: " + path);
    }
}

void EpisodeRecorder::record(std::int64_t tick, Action action,
                             const StepResult& result) {
    nlohmann::json line;
    line["tick"] = tick;
    line["action_code"] = static_cast<int>(action);
    line["action_name"] = action_name(action);
    line["reward"] = result.reward;
    auto unlocks = nlohmann::json::array();
    int unlock_count = 0;
    for (const auto& event : result.events) {
        for (Achievement a : event.unlocks) {
            unlocks.push_back(achievement_name(a));
            ++unlock_count;
        }
    }
    line["unlocks"] = std::move(unlocks);
    // Exact by the reward decomposition reward = unlocks + 0.1 * delta.
    line["health_delta"] =
        static_cast<int>(std::lround((result.reward - unlock_count) * 10.0));
    line["done"] = result.done;
    out_ << line.dump() << '\n';
    if (!out_) {
        throw std::runtime_error("write failed on episode log: " + path_);
    }
}

void EpisodeRecorder::flush() {
    out_.flush();
}

}  // namespace adarefiner::env
