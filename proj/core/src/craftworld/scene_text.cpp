#include "adarefiner/craftworld/scene_text.hpp"

#include <algorithm>
#include <map>

namespace adarefiner::env {

std::string format_status(const PlayerStatus& status) {
    return std::to_string(status.health) + " health, " +
           std::to_string(status.food) + " food, " +
           std::to_string(status.drink) + " drink, " +
           std::to_string(status.energy) + " energy";
}

SceneText render_scene_text(const Observation& obs) {
    struct Sighting {
        int dist2;
        int dx;
        int dy;
    };
    std::map<std::string, Sighting> nearest;

    for (int row = 0; row < kViewHeight; ++row) {
        for (int col = 0; col < kViewWidth; ++col) {
            const ObsCell cell = obs.local_view[row * kViewWidth + col];
            if (cell.is_void()) {
                continue;
            }
            if (auto entity = cell.entity();
                entity && *entity == EntityKind::player) {
                continue;
            }
            std::string name;
            if (auto entity = cell.entity()) {
                name = entity_display_name(*entity);
            } else {
                name = cell_display_name(*cell.cell());
            }
            const int dx = col - kViewCenterCol;
            const int dy = kViewCenterRow - row;  // up-positive
            const int dist2 = dx * dx + dy * dy;
            auto [it, inserted] = nearest.try_emplace(name, Sighting{dist2, dx, dy});
            if (!inserted && dist2 < it->second.dist2) {
                it->second = {dist2, dx, dy};
            }
        }
    }

    std::vector<std::pair<std::string, Sighting>> ordered(nearest.begin(),
                                                          nearest.end());
    std::ranges::sort(ordered, [](const auto& lhs, const auto& rhs) {
        if (lhs.second.dist2 != rhs.second.dist2) {
            return lhs.second.dist2 < rhs.second.dist2;
        }
        return lhs.first < rhs.first;
    });

    SceneText out;
    out.status = format_status(obs.status);
    for (const auto& [name, sighting] : ordered) {
        out.sees.push_back(name);
        const bool terrain = name == "grass" || name == "sand" || name == "path";
        if (!terrain) {
            out.coordinates.push_back(name + "(" +
                                      std::to_string(sighting.dx) + "," +
                                      std::to_string(sighting.dy) + ")");
        }
    }
    return out;
}

}  // namespace adarefiner::env
