#include <doctest.h>

#include <algorithm>

#include "adarefiner/craftworld/tech_tree.hpp"

using namespace adarefiner::env;

TEST_CASE("depth anchors") {
    CHECK(achievement_depth(Achievement::make_iron_pickaxe) == 7);
    CHECK(achievement_depth(Achievement::make_iron_sword) == 7);
    CHECK(achievement_depth(Achievement::collect_diamond) == 8);
}

TEST_CASE("depth profile: one level-8 task, two level-7 tasks, max 8") {
    int depth7 = 0;
    int depth8 = 0;
    int max_depth = 0;
    for (int i = 0; i < kAchievementCount; ++i) {
        const int d = achievement_depth(static_cast<Achievement>(i));
        CHECK(d >= 1);
        max_depth = std::max(max_depth, d);
        depth7 += d == 7 ? 1 : 0;
        depth8 += d == 8 ? 1 : 0;
    }
    CHECK(max_depth == 8);
    CHECK(depth7 == 2);
    CHECK(depth8 == 1);
}

TEST_CASE("depth is one more than the deepest prerequisite") {
    for (int i = 0; i < kAchievementCount; ++i) {
        const auto a = static_cast<Achievement>(i);
        int deepest = 0;
        for (auto p : prerequisites(a)) {
            deepest = std::max(deepest, achievement_depth(p));
        }
        CHECK(achievement_depth(a) == deepest + 1);
    }
}

TEST_CASE("achievable_next from scratch lists exactly the leaves, by depth") {
    const auto next = achievable_next({});
    CHECK(!next.empty());
    for (auto a : next) {
        CHECK(prerequisites(a).empty());
        CHECK(achievement_depth(a) == 1);
    }
}

TEST_CASE("achievable_next excludes unlocked and unmet achievements") {
    std::set<Achievement> unlocked{Achievement::collect_wood};
    const auto next = achievable_next(unlocked);
    CHECK(std::find(next.begin(), next.end(), Achievement::collect_wood) ==
          next.end());
    // place_table needs collect_wood only
    CHECK(std::find(next.begin(), next.end(), Achievement::place_table) !=
          next.end());
    // make_wood_pickaxe needs place_table as well
    CHECK(std::find(next.begin(), next.end(),
                    Achievement::make_wood_pickaxe) == next.end());
    // ordered by depth, ties by enum order
    for (std::size_t i = 1; i < next.size(); ++i) {
        CHECK(achievement_depth(next[i - 1]) <= achievement_depth(next[i]));
    }
}

TEST_CASE("all achievements become achievable as the tree unlocks") {
    std::set<Achievement> unlocked;
    while (unlocked.size() < kAchievementCount) {
        const auto next = achievable_next(unlocked);
        REQUIRE(!next.empty());
        for (auto a : next) {
            unlocked.insert(a);
        }
    }
    CHECK(achievable_next(unlocked).empty());
}
