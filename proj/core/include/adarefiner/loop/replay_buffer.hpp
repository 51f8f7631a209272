#pragma once

#include <deque>
#include <string>
#include <vector>

#include "adarefiner/craftworld/scene_text.hpp"
#include "adarefiner/gateway/prompts.hpp"
#include "adarefiner/textembed/trajectory.hpp"

namespace adarefiner::loop {

struct BufferEntry {
    std::vector<std::string> sees;  // scene summary before the action
    std::string action;             // action name
    std::vector<std::string> next_sees;
    double reward = 0.0;
    std::vector<std::string> goals;  // sub-goals active at the step
};

// The prompt-facing slice of training history: bounded step records, the
// trajectory window since the last generation event, and the latest (c, g, l).
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity = 10000)
        : capacity_(capacity) {}

    void push(BufferEntry entry);
    std::size_t size() const { return entries_.size(); }
    const std::deque<BufferEntry>& entries() const { return entries_; }

    text::TrajectoryWindow& window() { return window_; }

    void set_guidance(std::string summary, std::vector<std::string> goals,
                      double l);
    void set_score(double l) { l_ = l; }

    const std::string& summary() const { return summary_; }
    const std::vector<std::string>& goals() const { return goals_; }
    double score() const { return l_; }
    bool has_guidance() const { return !goals_.empty(); }

    // Context for prompt building: the given observation's scene text plus
    // the most recent actions and distinct sub-goal lines from history.
    llm::PromptContext prompt_context(const env::Observation& obs,
                                      int max_actions, int max_goals) const;

private:
    std::size_t capacity_;
    std::deque<BufferEntry> entries_;
    text::TrajectoryWindow window_;
    std::string summary_;
    std::vector<std::string> goals_;
    std::vector<std::string> goal_history_;  // deduplicated, latest last
    double l_ = 0.0;
};

}  // namespace adarefiner::loop
