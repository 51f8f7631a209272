#pragma once

#include <string>
#include <vector>

#include "adarefiner/craftworld/types.hpp"

namespace adarefiner::llm {

struct PromptParams {
    double temperature = 0.5;
    double top_p = 1.0;
    int max_tokens = 100;
};

struct PromptBundle {
    std::string system;
    std::string user;
    PromptParams params;
};

// The slice of the replay buffer a prompt is built from.
struct PromptContext {
    std::vector<std::string> sees;          // scene-text sees-list
    env::PlayerStatus status;
    std::vector<std::string> past_actions;  // most recent first is not required
    std::vector<std::string> past_goals;    // empty before the first generation
};

struct SubGoals {
    // Exactly 3 trimmed, non-empty entries.
    std::vector<std::string> goals;
};

// Adapter-LM prompt. The score line renders as "Comprehension score: <x.xxx>"
// and is omitted entirely under the no-l-score ablation.
PromptBundle build_adapter_prompt(const PromptContext& context, double l,
                                  bool include_score = true);

// Decision-LLM prompt carrying the adapter's analysis; throws
// std::invalid_argument if the summary is empty after trimming.
PromptBundle build_decision_prompt(const PromptContext& context,
                                   const std::string& adapter_summary);

// Decision-LLM prompt for the no-Adapter-LM ablation: the analysis section is
// replaced by the raw comprehension score line.
PromptBundle build_decision_prompt_no_adapter(const PromptContext& context,
                                              double l);

// "0.131"-style fixed three-decimal rendering used in all score lines.
std::string format_score(double l);

}  // namespace adarefiner::llm
