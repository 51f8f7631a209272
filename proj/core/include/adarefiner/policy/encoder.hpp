#pragma once

#include <vector>

#include "adarefiner/craftworld/types.hpp"
#include "adarefiner/textembed/embed.hpp"

namespace adarefiner::rl {

// Fixed feature layout: 63 one-hot cell codes over the observation alphabet,
// status scaled by /9, inventory clipped to [0,9]/9, facing one-hot, then the
// L2-normalized goal embedding (zero vectors pass through unchanged).
int feature_length(int embed_dim);

std::vector<float> encode_observation(const env::Observation& obs,
                                      const text::EmbeddingVector& goal_embedding,
                                      int embed_dim);

}  // namespace adarefiner::rl
