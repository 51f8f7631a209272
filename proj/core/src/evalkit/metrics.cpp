#include "adarefiner/evalkit/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace adarefiner::evalkit {

std::map<env::Achievement, double> success_rates(
    const std::vector<std::set<env::Achievement>>& episode_unlocks) {
    if (episode_unlocks.empty()) {
        throw std::invalid_argument("success_rates needs at least one episode");
    }
    std::map<env::Achievement, double> rates;
    for (int i = 0; i < env::kAchievementCount; ++i) {
        const auto a = static_cast<env::Achievement>(i);
        int completing = 0;
        for (const auto& unlocked : episode_unlocks) {
            completing += unlocked.count(a) ? 1 : 0;
        }
        rates[a] = 100.0 * completing /
                   static_cast<double>(episode_unlocks.size());
    }
    return rates;
}

double crafter_score(const std::map<env::Achievement, double>& rates) {
    if (rates.size() != static_cast<std::size_t>(env::kAchievementCount)) {
        throw std::invalid_argument("crafter_score needs exactly 22 rates");
    }
    double log_sum = 0.0;
    for (const auto& [achievement, s] : rates) {
        (void)achievement;
        if (!(s >= 0.0 && s <= 100.0)) {
            throw std::invalid_argument("success rate outside [0, 100]");
        }
        log_sum += std::log1p(s);
    }
    return std::expm1(log_sum / env::kAchievementCount);
}

}  // namespace adarefiner::evalkit
