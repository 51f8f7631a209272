#include "adarefiner/gateway/subgoals.hpp"

#include <cctype>

namespace adarefiner::llm {

namespace {

// Strips leading "-", "*", "1.", "2)" style markers and surrounding space.
std::string clean_item(std::string_view raw) {
    std::size_t begin = 0;
    std::size_t end = raw.size();
    auto is_space = [&raw](std::size_t i) {
        return std::isspace(static_cast<unsigned char>(raw[i])) != 0;
    };
    while (begin < end && is_space(begin)) {
        ++begin;
    }
    while (end > begin && is_space(end - 1)) {
        --end;
    }
    std::size_t marker = begin;
    while (marker < end &&
           std::isdigit(static_cast<unsigned char>(raw[marker]))) {
        ++marker;
    }
    if (marker < end && marker > begin &&
        (raw[marker] == '.' || raw[marker] == ')')) {
        begin = marker + 1;
    } else if (begin < end && (raw[begin] == '-' || raw[begin] == '*')) {
        ++begin;
    }
    while (begin < end && is_space(begin)) {
        ++begin;
    }
    while (end > begin && (is_space(end - 1) || raw[end - 1] == '.')) {
        --end;
    }
    return std::string(raw.substr(begin, end - begin));
}

}  // namespace

std::optional<SubGoals> parse_subgoals(const std::string& completion) {
    SubGoals out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= completion.size(); ++i) {
        if (i < completion.size() && completion[i] != ',' &&
            completion[i] != '\n') {
            continue;
        }
        std::string item =
            clean_item(std::string_view(completion).substr(start, i - start));
        start = i + 1;
        if (item.empty()) {
            continue;
        }
        out.goals.push_back(std::move(item));
        if (out.goals.size() == 3) {
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace adarefiner::llm
