#include "adarefiner/craftworld/tech_tree.hpp"

#include <algorithm>
#include <array>

namespace adarefiner::env {

namespace {

using A = Achievement;

const std::array<std::vector<A>, kAchievementCount>& prereq_table() {
    static const std::array<std::vector<A>, kAchievementCount> table = [] {
        std::array<std::vector<A>, kAchievementCount> t;
        auto set = [&t](A a, std::vector<A> pre) {
            t[static_cast<int>(a)] = std::move(pre);
        };
        set(A::place_table, {A::collect_wood});
        set(A::make_wood_pickaxe, {A::place_table});
        set(A::make_wood_sword, {A::place_table});
        set(A::collect_stone, {A::make_wood_pickaxe});
        set(A::collect_coal, {A::make_wood_pickaxe});
        set(A::place_stone, {A::collect_stone});
        set(A::place_furnace, {A::collect_stone});
        set(A::make_stone_pickaxe, {A::collect_stone});
        set(A::make_stone_sword, {A::collect_stone});
        set(A::collect_iron, {A::make_stone_pickaxe});
        set(A::make_iron_pickaxe,
            {A::collect_iron, A::place_furnace, A::collect_coal, A::place_table});
        set(A::make_iron_sword,
            {A::collect_iron, A::place_furnace, A::collect_coal, A::place_table});
        set(A::collect_diamond, {A::make_iron_pickaxe});
        set(A::place_plant, {A::collect_sapling});
        set(A::eat_plant, {A::place_plant});
        return t;
    }();
    return table;
}

}  // namespace

const std::vector<Achievement>& prerequisites(Achievement a) {
    return prereq_table()[static_cast<int>(a)];
}

int achievement_depth(Achievement a) {
    int depth = 1;
    for (Achievement pre : prerequisites(a)) {
        depth = std::max(depth, 1 + achievement_depth(pre));
    }
    return depth;
}

std::vector<Achievement> achievable_next(
    const std::set<Achievement>& unlocked) {
    std::vector<Achievement> out;
    for (int i = 0; i < kAchievementCount; ++i) {
        const auto a = static_cast<Achievement>(i);
        if (unlocked.contains(a)) {
            continue;
        }
        const bool ready = std::ranges::all_of(
            prerequisites(a),
            [&unlocked](Achievement pre) { return unlocked.contains(pre); });
        if (ready) {
            out.push_back(a);
        }
    }
    std::ranges::stable_sort(out, [](Achievement lhs, Achievement rhs) {
        return achievement_depth(lhs) < achievement_depth(rhs);
    });
    return out;
}

}  // namespace adarefiner::env
