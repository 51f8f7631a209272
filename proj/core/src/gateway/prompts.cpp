#include "adarefiner/gateway/prompts.hpp"

#include <cstdio>
#include <stdexcept>

#include "adarefiner/craftworld/scene_text.hpp"

namespace adarefiner::llm {

namespace {

constexpr const char* kActionList =
    "<move_left, move_right, move_up, move_down, do, sleep, place_stone, "
    "place_table, place_furnace, place_plant, make_wood_pickaxe, "
    "make_stone_pickaxe, make_iron_pickaxe, make_wood_sword, "
    "make_stone_sword, make_iron_sword>.";

std::string system_preamble() {
    return std::string(
               "You are a professional game analyst. A player is playing a "
               "game similar to Minecraft. Available actions are:\n") +
           kActionList + "\n\n";
}

const std::string kAdapterSystem =
    system_preamble() +
    "You will get the player's observation, status information, and its "
    "comprehension score of language guidance (between 0 and 1). You are "
    "collaborating with another analyst, and you will be asked to provide "
    "concise summaries and suggestions about this player.";

const std::string kDecisionSystem =
    system_preamble() +
    "You will get analysis about this player from another analyst, and you "
    "will be asked to provide the next sub-goals for this player.";

const std::string kDecisionNoAdapterSystem =
    system_preamble() +
    "You will get necessary information and player's comprehension score of "
    "language guidance (between 0 and 1). You will be asked to provide the "
    "next sub-goals for this player.";

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) {
            out += ", ";
        }
        out += item;
    }
    return out;
}

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// The shared observation/status/past-action/past-sub-goal block.
std::string context_sections(const PromptContext& context) {
    if (context.sees.empty()) {
        throw std::invalid_argument(
            "prompt context is missing the sees-list section");
    }
    std::string out;
    out += "Player sees: <" + join(context.sees) + ">\n\n";
    out += "Player status: <" + env::format_status(context.status) + ">\n\n";
    out += "Past action: <" +
           (context.past_actions.empty() ? std::string("none")
                                         : join(context.past_actions)) +
           ">\n\n";
    out += "Past sub-goals:\n";
    if (context.past_goals.empty()) {
        out += "- none\n";
    } else {
        for (const auto& goal : context.past_goals) {
            out += "- " + goal + "\n";
        }
    }
    out += "\n";
    return out;
}

}  // namespace

std::string format_score(double l) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", l);
    return buf;
}

PromptBundle build_adapter_prompt(const PromptContext& context, double l,
                                  bool include_score) {
    std::string user = context_sections(context);
    if (include_score) {
        user += "Comprehension score: <" + format_score(l) + ">\n\n";
    }
    user +=
        "Analyze the environment and the player's understanding "
        "capability,then generate concise summaries and suggestions about "
        "this player.";
    return {kAdapterSystem, std::move(user), {}};
}

PromptBundle build_decision_prompt(const PromptContext& context,
                                   const std::string& adapter_summary) {
    const std::string summary = trimmed(adapter_summary);
    if (summary.empty()) {
        throw std::invalid_argument(
            "decision prompt requires a non-empty adapter summary");
    }
    std::string user = context_sections(context);
    user += "Analysis: <" + summary + ">\n\n";
    user +=
        "Based on the provided information, suggest 3 sub-goals that the "
        "player should accomplish next.";
    return {kDecisionSystem, std::move(user), {}};
}

PromptBundle build_decision_prompt_no_adapter(const PromptContext& context,
                                              double l) {
    std::string user = context_sections(context);
    user += "Comprehension score: <" + format_score(l) + ">\n\n";
    user +=
        "Based on the provided information, suggest 3 sub-goals that the "
        "player should accomplish next.";
    return {kDecisionNoAdapterSystem, std::move(user), {}};
}

}  // namespace adarefiner::llm
