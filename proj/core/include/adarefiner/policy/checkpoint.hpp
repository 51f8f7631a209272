#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "adarefiner/policy/ppo.hpp"

namespace adarefiner::rl {

// Identifies the config a policy was trained under; a checkpoint refuses to
// load into a mismatched shape.
struct PolicyFingerprint {
    int input_dim = 0;
    int hidden = 0;
    int embed_dim = 0;
    int actions = 0;

    bool operator==(const PolicyFingerprint&) const = default;
};

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void save_checkpoint(const std::string& path, const PolicyParams& params,
                     const PolicyFingerprint& fingerprint, std::int64_t step);

// Loads into `params` (resized to the stored shapes). Throws CheckpointError
// naming the offending field on bad magic/version/shape/truncation.
std::int64_t load_checkpoint(const std::string& path, PolicyParams& params,
                             const PolicyFingerprint& expected);

}  // namespace adarefiner::rl
