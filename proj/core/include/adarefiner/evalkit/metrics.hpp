#pragma once

#include <map>
#include <set>
#include <vector>

#include "adarefiner/craftworld/types.hpp"

namespace adarefiner::evalkit {

// s_i = 100 * (episodes unlocking i at least once) / episodes, for all 22
// achievements. Throws std::invalid_argument on zero episodes.
std::map<env::Achievement, double> success_rates(
    const std::vector<std::set<env::Achievement>>& episode_unlocks);

// exp((1/22) * sum ln(1 + s_i)) - 1 over exactly 22 rates in [0, 100];
// anything else throws std::invalid_argument.
double crafter_score(const std::map<env::Achievement, double>& rates);

}  // namespace adarefiner::evalkit
