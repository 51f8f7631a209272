#include "adarefiner/textembed/embed.hpp"

#include <cctype>
#include <cmath>

#include "adarefiner/rng.hpp"

namespace adarefiner::text {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            current.push_back(
                static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        tokens.push_back(std::move(current));
    }
    return tokens;
}

EmbeddingVector embed(std::string_view text, const EmbedConfig& config) {
    EmbeddingVector v(static_cast<std::size_t>(config.dimension), 0.0);
    for (const auto& token : tokenize(text)) {
        const std::uint64_t h = fnv1a64(token.data(), token.size());
        const auto bucket =
            static_cast<std::size_t>(h % static_cast<std::uint64_t>(config.dimension));
        double sign = 1.0;
        if (config.signed_hash) {
            std::uint64_t s = h;
            sign = (splitmix64(s) & 1) ? 1.0 : -1.0;
        }
        v[bucket] += sign;
    }
    return v;
}

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
    double dot = 0.0;
    double nu = 0.0;
    double nv = 0.0;
    const std::size_t n = std::min(u.size(), v.size());
    for (std::size_t i = 0; i < n; ++i) {
        dot += u[i] * v[i];
    }
    for (double x : u) {
        nu += x * x;
    }
    for (double x : v) {
        nv += x * x;
    }
    if (nu == 0.0 || nv == 0.0) {
        return 0.0;
    }
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

std::string join_goals(const std::vector<std::string>& goals) {
    std::string joined;
    for (const auto& goal : goals) {
        if (!joined.empty()) {
            joined += "; ";
        }
        joined += goal;
    }
    return joined;
}

double comprehension_score(const std::vector<std::string>& goals,
                           const std::string& trajectory_text, ScoreMode mode,
                           const EmbedConfig& config) {
    const double value = cosine(embed(join_goals(goals), config),
                                embed(trajectory_text, config));
    if (mode == ScoreMode::binary) {
        return value > 0.5 ? 1.0 : 0.0;
    }
    return value;
}

}  // namespace adarefiner::text
