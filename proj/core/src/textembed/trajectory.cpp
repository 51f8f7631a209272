#include "adarefiner/textembed/trajectory.hpp"

#include <cctype>

namespace adarefiner::text {

void TrajectoryWindow::push(std::string action,
                            std::vector<std::string> unlocks) {
    steps_.push_back({std::move(action), std::move(unlocks)});
}

namespace {

void append_word(std::string& out, const std::string& word, bool lower) {
    if (!out.empty()) {
        out.push_back(' ');
    }
    for (char c : word) {
        if (c == '_') {
            out.push_back(' ');
        } else if (lower) {
            out.push_back(
                static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else {
            out.push_back(c);
        }
    }
}

}  // namespace

std::string render_trajectory(const TrajectoryWindow& window) {
    std::string out;
    for (const auto& step : window.steps()) {
        append_word(out, step.action, false);
        for (const auto& unlock : step.unlocks) {
            append_word(out, unlock, true);
        }
    }
    return out;
}

}  // namespace adarefiner::text
