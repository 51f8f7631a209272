#include <doctest.h>

#include <algorithm>

#include "adarefiner/craftworld/scene_text.hpp"

using namespace adarefiner::env;

namespace {

Observation blank_observation() {
    Observation obs;
    for (auto& cell : obs.local_view) {
        cell.code = static_cast<std::uint8_t>(CellKind::grass);
    }
    obs.local_view[kViewCenterRow * kViewWidth + kViewCenterCol].code =
        kCellKindCount + static_cast<int>(EntityKind::player);
    return obs;
}

void put(Observation& obs, int row, int col, int code) {
    obs.local_view[row * kViewWidth + col].code =
        static_cast<std::uint8_t>(code);
}

}  // namespace

TEST_CASE("status renders as the four-stat sentence") {
    PlayerStatus status{7, 5, 6, 4};
    CHECK(format_status(status) == "7 health, 5 food, 6 drink, 4 energy");
}

TEST_CASE("sees deduplicates and excludes the player") {
    Observation obs = blank_observation();
    put(obs, 3, 5, static_cast<int>(CellKind::water));
    put(obs, 3, 6, static_cast<int>(CellKind::water));
    put(obs, 0, 0, kCellKindCount + static_cast<int>(EntityKind::cow));
    const SceneText scene = render_scene_text(obs);
    CHECK(std::count(scene.sees.begin(), scene.sees.end(), "water") == 1);
    CHECK(std::count(scene.sees.begin(), scene.sees.end(), "cow") == 1);
    CHECK(std::count(scene.sees.begin(), scene.sees.end(), "player") == 0);
    CHECK(std::count(scene.sees.begin(), scene.sees.end(), "grass") == 1);
}

TEST_CASE("sees orders names by distance then name") {
    Observation obs = blank_observation();
    // tree adjacent, water farther away
    put(obs, 3, 5, static_cast<int>(CellKind::tree));
    put(obs, 0, 0, static_cast<int>(CellKind::water));
    const SceneText scene = render_scene_text(obs);
    const auto tree_pos =
        std::find(scene.sees.begin(), scene.sees.end(), "tree");
    const auto water_pos =
        std::find(scene.sees.begin(), scene.sees.end(), "water");
    REQUIRE(tree_pos != scene.sees.end());
    REQUIRE(water_pos != scene.sees.end());
    CHECK(tree_pos < water_pos);
}

TEST_CASE("coordinates use right-positive, up-positive offsets") {
    Observation obs = blank_observation();
    put(obs, 3, 5, static_cast<int>(CellKind::tree));  // one step right
    put(obs, 1, 4, kCellKindCount + static_cast<int>(EntityKind::cow));  // two up
    const SceneText scene = render_scene_text(obs);
    CHECK(std::find(scene.coordinates.begin(), scene.coordinates.end(),
                    "tree(1,0)") != scene.coordinates.end());
    CHECK(std::find(scene.coordinates.begin(), scene.coordinates.end(),
                    "cow(0,2)") != scene.coordinates.end());
}

TEST_CASE("coordinates skip walkable terrain") {
    Observation obs = blank_observation();
    put(obs, 2, 2, static_cast<int>(CellKind::sand));
    put(obs, 2, 3, static_cast<int>(CellKind::path));
    const SceneText scene = render_scene_text(obs);
    for (const auto& c : scene.coordinates) {
        CHECK(c.find("grass") == std::string::npos);
        CHECK(c.find("sand") == std::string::npos);
        CHECK(c.find("path") == std::string::npos);
    }
}

TEST_CASE("ore cells use display names") {
    Observation obs = blank_observation();
    put(obs, 3, 3, static_cast<int>(CellKind::coal_ore));
    put(obs, 3, 5, static_cast<int>(CellKind::placed_stone));
    const SceneText scene = render_scene_text(obs);
    CHECK(std::find(scene.sees.begin(), scene.sees.end(), "coal ore") !=
          scene.sees.end());
    CHECK(std::find(scene.sees.begin(), scene.sees.end(), "stone") !=
          scene.sees.end());
}

TEST_CASE("void cells are invisible") {
    Observation obs = blank_observation();
    for (int col = 0; col < kViewWidth; ++col) {
        obs.local_view[col].code = kVoidCode;
    }
    const SceneText scene = render_scene_text(obs);
    CHECK(scene.sees == std::vector<std::string>{"grass"});
}
