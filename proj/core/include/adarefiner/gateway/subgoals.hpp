#pragma once

#include <optional>
#include <string>

#include "adarefiner/gateway/prompts.hpp"

namespace adarefiner::llm {

// Splits a completion on commas and newlines, strips list markers and
// whitespace, and returns the first three usable items. Fewer than three
// items is a parse failure (nullopt), not an error; the caller carries the
// previous sub-goals.
std::optional<SubGoals> parse_subgoals(const std::string& completion);

}  // namespace adarefiner::llm
