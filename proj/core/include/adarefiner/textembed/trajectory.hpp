#pragma once

#include <string>
#include <vector>

namespace adarefiner::text {

struct TrajectoryStep {
    std::string action;                  // action name, e.g. "move_up"
    std::vector<std::string> unlocks;    // achievement display names
};

// Ordered steps since the last sub-goal generation event.
class TrajectoryWindow {
public:
    void push(std::string action, std::vector<std::string> unlocks = {});
    void clear() { steps_.clear(); }
    bool empty() const { return steps_.empty(); }
    std::size_t size() const { return steps_.size(); }
    const std::vector<TrajectoryStep>& steps() const { return steps_; }

private:
    std::vector<TrajectoryStep> steps_;
};

// Space-joined action names (underscores become spaces) followed by
// lowercased unlock names, in step order.
std::string render_trajectory(const TrajectoryWindow& window);

}  // namespace adarefiner::text
