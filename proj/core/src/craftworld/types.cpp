#include "adarefiner/craftworld/types.hpp"

#include <array>

namespace adarefiner::env {

namespace {

constexpr std::array<std::string_view, kActionCount> kActionNames = {
    "noop",
    "move_left",
    "move_right",
    "move_up",
    "move_down",
    "do",
    "sleep",
    "place_stone",
    "place_table",
    "place_furnace",
    "place_plant",
    "make_wood_pickaxe",
    "make_stone_pickaxe",
    "make_iron_pickaxe",
    "make_wood_sword",
    "make_stone_sword",
    "make_iron_sword",
};

constexpr std::array<std::string_view, kAchievementCount> kAchievementNames = {
    "Collect Coal",
    "Collect Diamond",
    "Collect Drink",
    "Collect Iron",
    "Collect Sapling",
    "Collect Stone",
    "Collect Wood",
    "Defeat Skeleton",
    "Defeat Zombie",
    "Eat Cow",
    "Eat Plant",
    "Make Iron Pickaxe",
    "Make Iron Sword",
    "Make Stone Pickaxe",
    "Make Stone Sword",
    "Make Wood Pickaxe",
    "Make Wood Sword",
    "Place Furnace",
    "Place Plant",
    "Place Stone",
    "Place Table",
    "Wake Up",
};

constexpr std::array<std::string_view, kItemCount> kItemNames = {
    "wood",        "stone",         "coal",        "iron",
    "diamond",     "sapling",       "wood_pickaxe", "stone_pickaxe",
    "iron_pickaxe", "wood_sword",   "stone_sword", "iron_sword",
};

constexpr std::array<std::string_view, kCellKindCount> kCellNames = {
    "grass", "sand",    "water", "tree",  "stone", "coal ore", "iron ore",
    "diamond ore", "path", "table", "furnace", "plant", "stone", "lava",
};

constexpr std::array<std::string_view, kEntityKindCount> kEntityNames = {
    "player",
    "cow",
    "zombie",
    "skeleton",
};

}  // namespace

std::string_view action_name(Action a) {
    return kActionNames[static_cast<int>(a)];
}

std::optional<Action> action_from_name(std::string_view name) {
    for (int i = 0; i < kActionCount; ++i) {
        if (kActionNames[i] == name) {
            return static_cast<Action>(i);
        }
    }
    return std::nullopt;
}

std::optional<Action> action_from_code(int code) {
    if (code < 0 || code >= kActionCount) {
        return std::nullopt;
    }
    return static_cast<Action>(code);
}

std::string_view achievement_name(Achievement a) {
    return kAchievementNames[static_cast<int>(a)];
}

std::optional<Achievement> achievement_from_name(std::string_view name) {
    for (int i = 0; i < kAchievementCount; ++i) {
        if (kAchievementNames[i] == name) {
            return static_cast<Achievement>(i);
        }
    }
    return std::nullopt;
}

std::string_view item_name(Item item) {
    return kItemNames[static_cast<int>(item)];
}

std::string_view cell_display_name(CellKind kind) {
    return kCellNames[static_cast<int>(kind)];
}

std::string_view entity_display_name(EntityKind kind) {
    return kEntityNames[static_cast<int>(kind)];
}

}  // namespace adarefiner::env
