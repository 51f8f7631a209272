#pragma once

#include <fstream>
#include <string>

#include "adarefiner/craftworld/types.hpp"

namespace adarefiner::env {

// JSON-lines episode recorder; one object per step with fields
// {tick, action_code, action_name, reward, unlocks, health_delta, done}.
class EpisodeRecorder {
public:
    explicit EpisodeRecorder(const std::string& path);

    void record(std::int64_t tick, Action action, const StepResult& result);
    void flush();

private:
    std::ofstream out_;
    std::string path_;
};

}  // namespace adarefiner::env
