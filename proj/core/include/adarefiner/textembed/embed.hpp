#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace adarefiner::text {

using EmbeddingVector = std::vector<double>;

inline constexpr int kDefaultEmbedDim = 256;

struct EmbedConfig {
    int dimension = kDefaultEmbedDim;
    // Signed feature hashing flips bucket signs from a second hash bit.
    // Off by default so bag-of-words embeddings stay componentwise >= 0 and
    // cosine scores stay in [0, 1].
    bool signed_hash = false;
};

// Lowercases, splits on non-alphanumeric runs, FNV-hashes each token into
// dimension buckets and accumulates counts. Pure and platform-independent.
EmbeddingVector embed(std::string_view text, const EmbedConfig& config = {});

std::vector<std::string> tokenize(std::string_view text);

// u.v / (|u||v|); 0 when either norm is 0 (the t=0 empty-window convention).
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

enum class ScoreMode { cosine, binary };

// Cosine between joined sub-goals and the rendered trajectory; binary mode
// maps to 1 strictly above the 0.5 threshold, else 0.
double comprehension_score(const std::vector<std::string>& goals,
                           const std::string& trajectory_text,
                           ScoreMode mode = ScoreMode::cosine,
                           const EmbedConfig& config = {});

// Sub-goals are joined with "; " before embedding.
std::string join_goals(const std::vector<std::string>& goals);

}  // namespace adarefiner::text
