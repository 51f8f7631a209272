#pragma once

#include <string>
#include <vector>

#include "adarefiner/craftworld/types.hpp"

namespace adarefiner::env {

struct SceneText {
    // Deduplicated visible object names ordered by distance then name;
    // the player itself is excluded.
    std::vector<std::string> sees;
    // "<h> health, <f> food, <d> drink, <e> energy"
    std::string status;
    // "name(dx,dy)" entries, one per distinct non-terrain object (nearest
    // instance); dx is right-positive, dy is up-positive.
    std::vector<std::string> coordinates;
};

SceneText render_scene_text(const Observation& obs);

std::string format_status(const PlayerStatus& status);

}  // namespace adarefiner::env
