#include "adarefiner/loop/replay_buffer.hpp"

#include <algorithm>

namespace adarefiner::loop {

void ReplayBuffer::push(BufferEntry entry) {
    entries_.push_back(std::move(entry));
    while (entries_.size() > capacity_) {
        entries_.pop_front();
    }
}

void ReplayBuffer::set_guidance(std::string summary,
                                std::vector<std::string> goals, double l) {
    summary_ = std::move(summary);
    goals_ = std::move(goals);
    l_ = l;
    for (const auto& g : goals_) {
        if (std::find(goal_history_.begin(), goal_history_.end(), g) ==
            goal_history_.end()) {
            goal_history_.push_back(g);
        }
    }
}

llm::PromptContext ReplayBuffer::prompt_context(const env::Observation& obs,
                                                int max_actions,
                                                int max_goals) const {
    llm::PromptContext ctx;
    const env::SceneText scene = env::render_scene_text(obs);
    ctx.sees = scene.sees;
    ctx.status = obs.status;

    const std::size_t action_count =
        std::min<std::size_t>(entries_.size(), std::max(max_actions, 0));
    for (std::size_t i = entries_.size() - action_count; i < entries_.size();
         ++i) {
        ctx.past_actions.push_back(entries_[i].action);
    }

    const std::size_t goal_count =
        std::min<std::size_t>(goal_history_.size(), std::max(max_goals, 0));
    for (std::size_t i = goal_history_.size() - goal_count;
         i < goal_history_.size(); ++i) {
        ctx.past_goals.push_back(goal_history_[i]);
    }
    return ctx;
}

}  // namespace adarefiner::loop
