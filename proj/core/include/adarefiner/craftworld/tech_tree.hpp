#pragma once

#include <set>
#include <vector>

#include "adarefiner/craftworld/types.hpp"

namespace adarefiner::env {

// Direct prerequisites of an achievement in the tech-tree DAG.
const std::vector<Achievement>& prerequisites(Achievement a);

// 1 + longest prerequisite chain; leaves have depth 1, max is 8.
int achievement_depth(Achievement a);

// Locked achievements whose prerequisites are all unlocked, ordered by
// (depth, enum order).
std::vector<Achievement> achievable_next(const std::set<Achievement>& unlocked);

}  // namespace adarefiner::env
