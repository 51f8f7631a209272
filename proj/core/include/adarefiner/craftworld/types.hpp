#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adarefiner::env {

enum class CellKind : std::uint8_t {
    grass,
    sand,
    water,
    tree,
    stone,
    coal_ore,
    iron_ore,
    diamond_ore,
    path,
    table,
    furnace,
    plant,
    placed_stone,
    lava,
};
inline constexpr int kCellKindCount = 14;

enum class EntityKind : std::uint8_t {
    player,
    cow,
    zombie,
    skeleton,
};
inline constexpr int kEntityKindCount = 4;

// Reserved observation code for off-map cells.
inline constexpr int kVoidCode = kCellKindCount + kEntityKindCount;
inline constexpr int kObsAlphabet = kCellKindCount + kEntityKindCount + 1;

enum class Action : std::uint8_t {
    noop = 0,
    move_left,
    move_right,
    move_up,
    move_down,
    do_interact,
    sleep,
    place_stone,
    place_table,
    place_furnace,
    place_plant,
    make_wood_pickaxe,
    make_stone_pickaxe,
    make_iron_pickaxe,
    make_wood_sword,
    make_stone_sword,
    make_iron_sword,
};
inline constexpr int kActionCount = 17;

std::string_view action_name(Action a);
std::optional<Action> action_from_name(std::string_view name);
std::optional<Action> action_from_code(int code);

enum class Achievement : std::uint8_t {
    collect_coal,
    collect_diamond,
    collect_drink,
    collect_iron,
    collect_sapling,
    collect_stone,
    collect_wood,
    defeat_skeleton,
    defeat_zombie,
    eat_cow,
    eat_plant,
    make_iron_pickaxe,
    make_iron_sword,
    make_stone_pickaxe,
    make_stone_sword,
    make_wood_pickaxe,
    make_wood_sword,
    place_furnace,
    place_plant,
    place_stone,
    place_table,
    wake_up,
};
inline constexpr int kAchievementCount = 22;

// Display name, e.g. "Collect Wood".
std::string_view achievement_name(Achievement a);
std::optional<Achievement> achievement_from_name(std::string_view name);

enum class Item : std::uint8_t {
    wood,
    stone,
    coal,
    iron,
    diamond,
    sapling,
    wood_pickaxe,
    stone_pickaxe,
    iron_pickaxe,
    wood_sword,
    stone_sword,
    iron_sword,
};
inline constexpr int kItemCount = 12;

std::string_view item_name(Item item);

enum class Direction : std::uint8_t { left, right, up, down };
inline constexpr int kDirectionCount = 4;

struct PlayerStatus {
    int health = 9;
    int food = 9;
    int drink = 9;
    int energy = 9;

    bool operator==(const PlayerStatus&) const = default;
};
inline constexpr int kStatusMax = 9;

inline constexpr int kViewWidth = 9;
inline constexpr int kViewHeight = 7;
inline constexpr int kViewCells = kViewWidth * kViewHeight;
// The player occupies column 4, row 3 of the local view.
inline constexpr int kViewCenterCol = 4;
inline constexpr int kViewCenterRow = 3;

struct ObsCell {
    // Cell code in [0, kObsAlphabet): cell kinds, then entity kinds, then void.
    // An entity occludes the terrain beneath it.
    std::uint8_t code = kVoidCode;

    bool is_void() const { return code == kVoidCode; }
    bool is_entity() const {
        return code >= kCellKindCount && code < kCellKindCount + kEntityKindCount;
    }
    std::optional<CellKind> cell() const {
        return code < kCellKindCount ? std::optional(static_cast<CellKind>(code))
                                     : std::nullopt;
    }
    std::optional<EntityKind> entity() const {
        return is_entity()
                   ? std::optional(static_cast<EntityKind>(code - kCellKindCount))
                   : std::nullopt;
    }
};

struct Observation {
    // Row-major, kViewHeight rows of kViewWidth columns.
    std::array<ObsCell, kViewCells> local_view{};
    PlayerStatus status;
    std::array<int, kItemCount> inventory{};
    Direction facing = Direction::down;

    bool operator==(const Observation&) const = default;
};

struct StepEvent {
    std::string name;
    std::vector<Achievement> unlocks;
    int health_delta = 0;
};

struct StepResult {
    Observation observation;
    double reward = 0.0;
    bool done = false;
    std::vector<StepEvent> events;
};

// Display name used in scene text, e.g. "coal ore"; placed stone renders as
// plain "stone".
std::string_view cell_display_name(CellKind kind);
std::string_view entity_display_name(EntityKind kind);

}  // namespace adarefiner::env
