#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "adarefiner/craftworld/types.hpp"
#include "adarefiner/rng.hpp"

namespace adarefiner::env {

// Gameplay constants. The original benchmark never documents these; they are
// tunable config, chosen to reproduce the prerequisite structure of the 22
// achievements at reduced fidelity.
struct WorldConfig {
    int size = 64;               // square map edge
    int episode_cap = 10000;     // ticks before truncation
    int day_length = 300;        // ticks per day/night cycle

    double tree_density = 0.06;     // fraction of grass cells
    double coal_density = 0.02;     // fraction of stone cells
    double iron_density = 0.01;
    double diamond_density = 0.003;
    double lava_density = 0.002;
    double cow_density = 0.015;     // fraction of grass cells

    int food_decay_ticks = 25;
    int drink_decay_ticks = 20;
    int energy_decay_ticks = 30;
    int starve_ticks = 10;          // health -1 per depleted stat
    int regen_ticks = 30;           // health +1 when all stats positive

    int cow_food = 4;               // food gained from Eat Cow
    int plant_ripen_ticks = 100;

    int cow_health = 3;
    int zombie_health = 5;
    int skeleton_health = 3;
    int zombie_damage = 2;
    int skeleton_damage = 1;
    int zombie_attack_cooldown = 5;
    int skeleton_attack_cooldown = 8;
    int skeleton_range = 4;

    double zombie_spawn_chance = 0.05;   // per tick at night
    double skeleton_spawn_chance = 0.02;
    int max_zombies = 6;
    int max_skeletons = 3;
    double sapling_chance = 0.1;         // 'do' on grass

    double night_fraction = 0.3;         // daylight phase below this is night
};

struct Entity {
    EntityKind kind;
    int x = 0;
    int y = 0;
    int health = 1;
    int cooldown = 0;
};

struct WorldState {
    std::vector<CellKind> grid;  // size*size, row-major
    std::vector<Entity> entities;
    int player_x = 0;
    int player_y = 0;
    Direction facing = Direction::down;
    std::array<int, kItemCount> inventory{};
    PlayerStatus status;
    std::set<Achievement> unlocked;
    std::int64_t tick = 0;
    bool sleeping = false;
    bool done = false;
    std::map<int, std::int64_t> plant_ages;  // cell index -> tick planted
    Rng rng;
};

class World {
public:
    explicit World(WorldConfig config = {});

    Observation reset(std::uint64_t seed);
    StepResult step(Action action);

    Observation observe() const;
    // True iff the action would change the world from the current state.
    bool feasible(Action action) const;

    const WorldState& state() const { return state_; }
    const WorldConfig& config() const { return config_; }
    bool done() const { return state_.done; }

    // Daylight phase in [0, 1); night iff phase < night_fraction.
    double daylight() const;
    bool is_night() const;

    std::uint64_t state_hash() const;

private:
    CellKind cell(int x, int y) const;
    void set_cell(int x, int y, CellKind kind);
    bool in_bounds(int x, int y) const;
    bool walkable(int x, int y) const;
    const Entity* entity_at(int x, int y) const;
    Entity* entity_at(int x, int y);
    void facing_target(int& x, int& y) const;
    bool near_cell(CellKind kind) const;  // within Chebyshev distance 1

    void generate_map(std::uint64_t seed);
    void apply_action(Action action, StepResult& result);
    void interact(StepResult& result);
    void update_entities(StepResult& result);
    void update_status();
    void unlock(Achievement achievement, StepResult& result, StepEvent& event);
    int sword_damage() const;

    bool can_place(Action action) const;
    bool can_make(Action action) const;

    WorldConfig config_;
    WorldState state_;
};

}  // namespace adarefiner::env
