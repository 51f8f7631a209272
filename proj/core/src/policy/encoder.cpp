#include "adarefiner/policy/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adarefiner::rl {

int feature_length(int embed_dim) {
    return env::kViewCells * env::kObsAlphabet + 4 + env::kItemCount +
           env::kDirectionCount + embed_dim;
}

std::vector<float> encode_observation(
    const env::Observation& obs, const text::EmbeddingVector& goal_embedding,
    int embed_dim) {
    if (static_cast<int>(goal_embedding.size()) != embed_dim) {
        throw std::invalid_argument(
            "goal embedding dimension mismatch: got " +
            std::to_string(goal_embedding.size()) + ", configured " +
            std::to_string(embed_dim));
    }
    std::vector<float> features(
        static_cast<std::size_t>(feature_length(embed_dim)), 0.0f);
    std::size_t offset = 0;

    for (const auto& cell : obs.local_view) {
        features[offset + cell.code] = 1.0f;
        offset += env::kObsAlphabet;
    }

    features[offset++] = static_cast<float>(obs.status.health) / 9.0f;
    features[offset++] = static_cast<float>(obs.status.food) / 9.0f;
    features[offset++] = static_cast<float>(obs.status.drink) / 9.0f;
    features[offset++] = static_cast<float>(obs.status.energy) / 9.0f;

    for (int count : obs.inventory) {
        features[offset++] = static_cast<float>(std::clamp(count, 0, 9)) / 9.0f;
    }

    features[offset + static_cast<int>(obs.facing)] = 1.0f;
    offset += env::kDirectionCount;

    double norm2 = 0.0;
    for (double x : goal_embedding) {
        norm2 += x * x;
    }
    const double inv_norm = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 0.0;
    for (double x : goal_embedding) {
        features[offset++] = static_cast<float>(x * inv_norm);
    }
    return features;
}

}  // namespace adarefiner::rl
