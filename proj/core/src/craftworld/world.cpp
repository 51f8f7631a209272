#include "adarefiner/craftworld/world.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace adarefiner::env {

namespace {

int item_count(const std::array<int, kItemCount>& inv, Item item) {
    return inv[static_cast<int>(item)];
}

int& item_slot(std::array<int, kItemCount>& inv, Item item) {
    return inv[static_cast<int>(item)];
}

// Smoothed value noise on a lattice, hashed from the seed so identical seeds
// produce identical maps on every platform.
double value_noise(std::uint64_t seed, int x, int y, int scale) {
    auto lattice = [seed](int ix, int iy) {
        std::uint64_t h = seed;
        h = splitmix64(h) ^ (static_cast<std::uint64_t>(ix) * 0x9e3779b97f4a7c15ULL);
        h = splitmix64(h) ^ (static_cast<std::uint64_t>(iy) * 0xc2b2ae3d27d4eb4fULL);
        h = splitmix64(h);
        return static_cast<double>(h >> 11) * 0x1.0p-53;
    };
    const int ix = x / scale;
    const int iy = y / scale;
    double fx = static_cast<double>(x % scale) / scale;
    double fy = static_cast<double>(y % scale) / scale;
    fx = fx * fx * (3.0 - 2.0 * fx);
    fy = fy * fy * (3.0 - 2.0 * fy);
    const double v00 = lattice(ix, iy);
    const double v10 = lattice(ix + 1, iy);
    const double v01 = lattice(ix, iy + 1);
    const double v11 = lattice(ix + 1, iy + 1);
    return (v00 * (1 - fx) + v10 * fx) * (1 - fy) +
           (v01 * (1 - fx) + v11 * fx) * fy;
}

}  // namespace

World::World(WorldConfig config) : config_(config) {
    reset(0);
}

CellKind World::cell(int x, int y) const {
    return state_.grid[static_cast<std::size_t>(y) * config_.size + x];
}

void World::set_cell(int x, int y, CellKind kind) {
    state_.grid[static_cast<std::size_t>(y) * config_.size + x] = kind;
}

bool World::in_bounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < config_.size && y < config_.size;
}

bool World::walkable(int x, int y) const {
    if (!in_bounds(x, y)) {
        return false;
    }
    const CellKind k = cell(x, y);
    return k == CellKind::grass || k == CellKind::sand || k == CellKind::path;
}

const Entity* World::entity_at(int x, int y) const {
    for (const auto& e : state_.entities) {
        if (e.x == x && e.y == y) {
            return &e;
        }
    }
    return nullptr;
}

Entity* World::entity_at(int x, int y) {
    return const_cast<Entity*>(std::as_const(*this).entity_at(x, y));
}

void World::facing_target(int& x, int& y) const {
    x = state_.player_x;
    y = state_.player_y;
    switch (state_.facing) {
        case Direction::left: --x; break;
        case Direction::right: ++x; break;
        case Direction::up: --y; break;
        case Direction::down: ++y; break;
    }
}

bool World::near_cell(CellKind kind) const {
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            const int x = state_.player_x + dx;
            const int y = state_.player_y + dy;
            if (in_bounds(x, y) && cell(x, y) == kind) {
                return true;
            }
        }
    }
    return false;
}

double World::daylight() const {
    const double base =
        static_cast<double>(state_.tick % config_.day_length) / config_.day_length;
    return std::fmod(base + config_.night_fraction, 1.0);
}

bool World::is_night() const {
    return daylight() < config_.night_fraction;
}

Observation World::reset(std::uint64_t seed) {
    state_ = WorldState{};
    state_.rng = Rng(seed);
    state_.grid.assign(static_cast<std::size_t>(config_.size) * config_.size,
                       CellKind::grass);
    generate_map(seed);
    return observe();
}

void World::generate_map(std::uint64_t seed) {
    const int n = config_.size;
    const int scale = std::max(4, n / 8);
    const std::uint64_t elev_seed = splitmix64(seed) + 1;
    Rng& rng = state_.rng;

    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            const double elev = value_noise(elev_seed, x, y, scale);
            CellKind k;
            if (elev > 0.70) {
                k = CellKind::stone;
                if (elev > 0.85 && rng.chance(config_.lava_density)) {
                    k = CellKind::lava;
                } else if (rng.chance(config_.diamond_density)) {
                    k = CellKind::diamond_ore;
                } else if (rng.chance(config_.iron_density)) {
                    k = CellKind::iron_ore;
                } else if (rng.chance(config_.coal_density)) {
                    k = CellKind::coal_ore;
                }
            } else if (elev < 0.28) {
                k = CellKind::water;
            } else if (elev < 0.33) {
                k = CellKind::sand;
            } else {
                k = rng.chance(config_.tree_density) ? CellKind::tree
                                                     : CellKind::grass;
            }
            set_cell(x, y, k);
        }
    }

    // Player spawns on the grass cell nearest the map center.
    int best_x = n / 2;
    int best_y = n / 2;
    int best_d = 1 << 30;
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            if (cell(x, y) != CellKind::grass) {
                continue;
            }
            const int d = (x - n / 2) * (x - n / 2) + (y - n / 2) * (y - n / 2);
            if (d < best_d) {
                best_d = d;
                best_x = x;
                best_y = y;
            }
        }
    }
    state_.player_x = best_x;
    state_.player_y = best_y;

    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            if (cell(x, y) == CellKind::grass && !(x == best_x && y == best_y) &&
                rng.chance(config_.cow_density)) {
                state_.entities.push_back(
                    {EntityKind::cow, x, y, config_.cow_health, 0});
            }
        }
    }
}

int World::sword_damage() const {
    if (item_count(state_.inventory, Item::iron_sword) > 0) {
        return 3;
    }
    if (item_count(state_.inventory, Item::stone_sword) > 0) {
        return 2;
    }
    return 1;  // bare hands and wood sword
}

void World::unlock(Achievement achievement, StepResult& result,
                   StepEvent& event) {
    (void)result;
    if (state_.unlocked.insert(achievement).second) {
        event.unlocks.push_back(achievement);
    }
}

bool World::can_place(Action action) const {
    int tx;
    int ty;
    facing_target(tx, ty);
    if (!in_bounds(tx, ty) || entity_at(tx, ty) != nullptr) {
        return false;
    }
    const CellKind target = cell(tx, ty);
    const bool open_ground = target == CellKind::grass ||
                             target == CellKind::sand ||
                             target == CellKind::path;
    switch (action) {
        case Action::place_stone:
            return item_count(state_.inventory, Item::stone) > 0 &&
                   (open_ground || target == CellKind::water);
        case Action::place_table:
            return item_count(state_.inventory, Item::wood) > 0 && open_ground;
        case Action::place_furnace:
            return item_count(state_.inventory, Item::stone) > 0 && open_ground;
        case Action::place_plant:
            return item_count(state_.inventory, Item::sapling) > 0 &&
                   target == CellKind::grass;
        default:
            return false;
    }
}

bool World::can_make(Action action) const {
    const auto& inv = state_.inventory;
    const bool table = near_cell(CellKind::table);
    const bool furnace = near_cell(CellKind::furnace);
    switch (action) {
        case Action::make_wood_pickaxe:
        case Action::make_wood_sword:
            return table && item_count(inv, Item::wood) > 0;
        case Action::make_stone_pickaxe:
        case Action::make_stone_sword:
            return table && item_count(inv, Item::wood) > 0 &&
                   item_count(inv, Item::stone) > 0;
        case Action::make_iron_pickaxe:
        case Action::make_iron_sword:
            return table && furnace && item_count(inv, Item::wood) > 0 &&
                   item_count(inv, Item::coal) > 0 &&
                   item_count(inv, Item::iron) > 0;
        default:
            return false;
    }
}

bool World::feasible(Action action) const {
    switch (action) {
        case Action::noop:
            return true;
        case Action::sleep:
            return state_.status.energy < kStatusMax;
        case Action::move_left:
        case Action::move_right:
        case Action::move_up:
        case Action::move_down: {
            int x = state_.player_x;
            int y = state_.player_y;
            switch (action) {
                case Action::move_left: --x; break;
                case Action::move_right: ++x; break;
                case Action::move_up: --y; break;
                default: ++y; break;
            }
            return walkable(x, y) && entity_at(x, y) == nullptr;
        }
        case Action::do_interact: {
            int tx;
            int ty;
            facing_target(tx, ty);
            if (!in_bounds(tx, ty)) {
                return false;
            }
            if (entity_at(tx, ty) != nullptr) {
                return true;
            }
            const auto& inv = state_.inventory;
            switch (cell(tx, ty)) {
                case CellKind::tree:
                case CellKind::water:
                case CellKind::grass:
                    return true;
                case CellKind::stone:
                case CellKind::coal_ore:
                case CellKind::placed_stone:
                    return item_count(inv, Item::wood_pickaxe) > 0;
                case CellKind::iron_ore:
                    return item_count(inv, Item::stone_pickaxe) > 0;
                case CellKind::diamond_ore:
                    return item_count(inv, Item::iron_pickaxe) > 0;
                case CellKind::plant: {
                    auto it = state_.plant_ages.find(ty * config_.size + tx);
                    return it != state_.plant_ages.end() &&
                           state_.tick - it->second >= config_.plant_ripen_ticks;
                }
                default:
                    return false;
            }
        }
        case Action::place_stone:
        case Action::place_table:
        case Action::place_furnace:
        case Action::place_plant:
            return can_place(action);
        default:
            return can_make(action);
    }
}

StepResult World::step(Action action) {
    if (state_.done) {
        throw std::logic_error("step() called on a finished episode");
    }

    StepResult result;
    const int health_before = state_.status.health;
    const auto unlocks_before = state_.unlocked.size();

    if (action != Action::sleep) {
        state_.sleeping = false;
    }
    apply_action(action, result);
    update_entities(result);
    update_status();

    auto clamp_stat = [](int& v) { v = std::clamp(v, 0, kStatusMax); };
    clamp_stat(state_.status.health);
    clamp_stat(state_.status.food);
    clamp_stat(state_.status.drink);
    clamp_stat(state_.status.energy);

    ++state_.tick;
    if (state_.status.health == 0 || state_.tick >= config_.episode_cap) {
        state_.done = true;
    }

    const int new_unlocks =
        static_cast<int>(state_.unlocked.size() - unlocks_before);
    const int health_delta = state_.status.health - health_before;
    result.reward = static_cast<double>(new_unlocks) + 0.1 * health_delta;
    result.done = state_.done;
    result.observation = observe();
    return result;
}

void World::apply_action(Action action, StepResult& result) {
    switch (action) {
        case Action::noop:
            return;
        case Action::sleep: {
            state_.sleeping = true;
            StepEvent event{"sleep", {}, 0};
            if (state_.status.energy < kStatusMax) {
                ++state_.status.energy;
            }
            if (state_.status.energy == kStatusMax && is_night()) {
                unlock(Achievement::wake_up, result, event);
            }
            if (!event.unlocks.empty()) {
                result.events.push_back(std::move(event));
            }
            return;
        }
        case Action::move_left:
        case Action::move_right:
        case Action::move_up:
        case Action::move_down: {
            switch (action) {
                case Action::move_left: state_.facing = Direction::left; break;
                case Action::move_right: state_.facing = Direction::right; break;
                case Action::move_up: state_.facing = Direction::up; break;
                default: state_.facing = Direction::down; break;
            }
            int tx;
            int ty;
            facing_target(tx, ty);
            if (walkable(tx, ty) && entity_at(tx, ty) == nullptr) {
                state_.player_x = tx;
                state_.player_y = ty;
            }
            return;
        }
        case Action::do_interact:
            interact(result);
            return;
        case Action::place_stone:
        case Action::place_table:
        case Action::place_furnace:
        case Action::place_plant: {
            if (!can_place(action)) {
                return;
            }
            int tx;
            int ty;
            facing_target(tx, ty);
            StepEvent event;
            switch (action) {
                case Action::place_stone:
                    --item_slot(state_.inventory, Item::stone);
                    set_cell(tx, ty, CellKind::placed_stone);
                    event.name = "place_stone";
                    unlock(Achievement::place_stone, result, event);
                    break;
                case Action::place_table:
                    --item_slot(state_.inventory, Item::wood);
                    set_cell(tx, ty, CellKind::table);
                    event.name = "place_table";
                    unlock(Achievement::place_table, result, event);
                    break;
                case Action::place_furnace:
                    --item_slot(state_.inventory, Item::stone);
                    set_cell(tx, ty, CellKind::furnace);
                    event.name = "place_furnace";
                    unlock(Achievement::place_furnace, result, event);
                    break;
                default:
                    --item_slot(state_.inventory, Item::sapling);
                    set_cell(tx, ty, CellKind::plant);
                    state_.plant_ages[ty * config_.size + tx] = state_.tick;
                    event.name = "place_plant";
                    unlock(Achievement::place_plant, result, event);
                    break;
            }
            result.events.push_back(std::move(event));
            return;
        }
        default: {
            if (!can_make(action)) {
                return;
            }
            StepEvent event{std::string(action_name(action)), {}, 0};
            auto& inv = state_.inventory;
            switch (action) {
                case Action::make_wood_pickaxe:
                    --item_slot(inv, Item::wood);
                    ++item_slot(inv, Item::wood_pickaxe);
                    unlock(Achievement::make_wood_pickaxe, result, event);
                    break;
                case Action::make_stone_pickaxe:
                    --item_slot(inv, Item::wood);
                    --item_slot(inv, Item::stone);
                    ++item_slot(inv, Item::stone_pickaxe);
                    unlock(Achievement::make_stone_pickaxe, result, event);
                    break;
                case Action::make_iron_pickaxe:
                    --item_slot(inv, Item::wood);
                    --item_slot(inv, Item::coal);
                    --item_slot(inv, Item::iron);
                    ++item_slot(inv, Item::iron_pickaxe);
                    unlock(Achievement::make_iron_pickaxe, result, event);
                    break;
                case Action::make_wood_sword:
                    --item_slot(inv, Item::wood);
                    ++item_slot(inv, Item::wood_sword);
                    unlock(Achievement::make_wood_sword, result, event);
                    break;
                case Action::make_stone_sword:
                    --item_slot(inv, Item::wood);
                    --item_slot(inv, Item::stone);
                    ++item_slot(inv, Item::stone_sword);
                    unlock(Achievement::make_stone_sword, result, event);
                    break;
                default:
                    --item_slot(inv, Item::wood);
                    --item_slot(inv, Item::coal);
                    --item_slot(inv, Item::iron);
                    ++item_slot(inv, Item::iron_sword);
                    unlock(Achievement::make_iron_sword, result, event);
                    break;
            }
            result.events.push_back(std::move(event));
            return;
        }
    }
}

void World::interact(StepResult& result) {
    int tx;
    int ty;
    facing_target(tx, ty);
    if (!in_bounds(tx, ty)) {
        return;
    }
    auto& inv = state_.inventory;

    if (Entity* target = entity_at(tx, ty)) {
        target->health -= sword_damage();
        if (target->health > 0) {
            result.events.push_back({"attack", {}, 0});
            return;
        }
        StepEvent event;
        switch (target->kind) {
            case EntityKind::cow:
                state_.status.food =
                    std::min(kStatusMax, state_.status.food + config_.cow_food);
                event.name = "eat_cow";
                unlock(Achievement::eat_cow, result, event);
                break;
            case EntityKind::zombie:
                event.name = "defeat_zombie";
                unlock(Achievement::defeat_zombie, result, event);
                break;
            case EntityKind::skeleton:
                event.name = "defeat_skeleton";
                unlock(Achievement::defeat_skeleton, result, event);
                break;
            default:
                break;
        }
        std::erase_if(state_.entities, [tx, ty](const Entity& e) {
            return e.x == tx && e.y == ty;
        });
        result.events.push_back(std::move(event));
        return;
    }

    StepEvent event;
    switch (cell(tx, ty)) {
        case CellKind::tree:
            ++item_slot(inv, Item::wood);
            event.name = "collect_wood";
            unlock(Achievement::collect_wood, result, event);
            break;
        case CellKind::water:
            state_.status.drink = std::min(kStatusMax, state_.status.drink + 1);
            event.name = "collect_drink";
            unlock(Achievement::collect_drink, result, event);
            break;
        case CellKind::grass:
            if (!state_.rng.chance(config_.sapling_chance)) {
                return;
            }
            ++item_slot(inv, Item::sapling);
            event.name = "collect_sapling";
            unlock(Achievement::collect_sapling, result, event);
            break;
        case CellKind::stone:
        case CellKind::placed_stone:
            if (item_count(inv, Item::wood_pickaxe) == 0) {
                return;
            }
            ++item_slot(inv, Item::stone);
            set_cell(tx, ty, CellKind::path);
            event.name = "collect_stone";
            unlock(Achievement::collect_stone, result, event);
            break;
        case CellKind::coal_ore:
            if (item_count(inv, Item::wood_pickaxe) == 0) {
                return;
            }
            ++item_slot(inv, Item::coal);
            set_cell(tx, ty, CellKind::path);
            event.name = "collect_coal";
            unlock(Achievement::collect_coal, result, event);
            break;
        case CellKind::iron_ore:
            if (item_count(inv, Item::stone_pickaxe) == 0) {
                return;
            }
            ++item_slot(inv, Item::iron);
            set_cell(tx, ty, CellKind::path);
            event.name = "collect_iron";
            unlock(Achievement::collect_iron, result, event);
            break;
        case CellKind::diamond_ore:
            if (item_count(inv, Item::iron_pickaxe) == 0) {
                return;
            }
            ++item_slot(inv, Item::diamond);
            set_cell(tx, ty, CellKind::path);
            event.name = "collect_diamond";
            unlock(Achievement::collect_diamond, result, event);
            break;
        case CellKind::plant: {
            const int idx = ty * config_.size + tx;
            auto it = state_.plant_ages.find(idx);
            if (it == state_.plant_ages.end() ||
                state_.tick - it->second < config_.plant_ripen_ticks) {
                return;
            }
            state_.plant_ages.erase(it);
            set_cell(tx, ty, CellKind::grass);
            state_.status.food = std::min(kStatusMax, state_.status.food + 3);
            event.name = "eat_plant";
            unlock(Achievement::eat_plant, result, event);
            break;
        }
        default:
            return;
    }
    result.events.push_back(std::move(event));
}

void World::update_entities(StepResult& result) {
    Rng& rng = state_.rng;
    const bool night = is_night();
    int zombies = 0;
    int skeletons = 0;

    auto try_move = [this](Entity& e, int dx, int dy) {
        const int nx = e.x + dx;
        const int ny = e.y + dy;
        if (walkable(nx, ny) && entity_at(nx, ny) == nullptr &&
            !(nx == state_.player_x && ny == state_.player_y)) {
            e.x = nx;
            e.y = ny;
        }
    };

    for (auto& e : state_.entities) {
        if (e.cooldown > 0) {
            --e.cooldown;
        }
        const int dx = state_.player_x - e.x;
        const int dy = state_.player_y - e.y;
        const int manhattan = std::abs(dx) + std::abs(dy);
        switch (e.kind) {
            case EntityKind::cow:
                if (rng.chance(0.25)) {
                    const int dir = static_cast<int>(rng.below(4));
                    try_move(e, dir == 0 ? -1 : dir == 1 ? 1 : 0,
                             dir == 2 ? -1 : dir == 3 ? 1 : 0);
                }
                break;
            case EntityKind::zombie: {
                ++zombies;
                if (manhattan == 1 && e.cooldown == 0) {
                    state_.status.health -= config_.zombie_damage;
                    e.cooldown = config_.zombie_attack_cooldown;
                    result.events.push_back(
                        {"zombie_attack", {}, -config_.zombie_damage});
                } else if (manhattan <= 8 && state_.tick % 2 == 0) {
                    if (std::abs(dx) >= std::abs(dy)) {
                        try_move(e, dx > 0 ? 1 : -1, 0);
                    } else {
                        try_move(e, 0, dy > 0 ? 1 : -1);
                    }
                } else if (rng.chance(0.3)) {
                    const int dir = static_cast<int>(rng.below(4));
                    try_move(e, dir == 0 ? -1 : dir == 1 ? 1 : 0,
                             dir == 2 ? -1 : dir == 3 ? 1 : 0);
                }
                break;
            }
            case EntityKind::skeleton: {
                ++skeletons;
                const bool aligned = (dx == 0) != (dy == 0);
                if (aligned && manhattan <= config_.skeleton_range &&
                    e.cooldown == 0) {
                    bool clear = true;
                    const int sx = dx == 0 ? 0 : (dx > 0 ? 1 : -1);
                    const int sy = dy == 0 ? 0 : (dy > 0 ? 1 : -1);
                    for (int i = 1; i < manhattan; ++i) {
                        if (!walkable(e.x + sx * i, e.y + sy * i)) {
                            clear = false;
                            break;
                        }
                    }
                    if (clear) {
                        state_.status.health -= config_.skeleton_damage;
                        e.cooldown = config_.skeleton_attack_cooldown;
                        result.events.push_back(
                            {"skeleton_arrow", {}, -config_.skeleton_damage});
                    }
                } else if (rng.chance(0.2)) {
                    const int dir = static_cast<int>(rng.below(4));
                    try_move(e, dir == 0 ? -1 : dir == 1 ? 1 : 0,
                             dir == 2 ? -1 : dir == 3 ? 1 : 0);
                }
                break;
            }
            default:
                break;
        }
    }

    // Night spawns zombies on grass near the player; skeletons haunt mined
    // paths. Daylight slowly clears zombies out.
    auto spawn_near = [&](EntityKind kind, CellKind ground, int health) {
        for (int attempt = 0; attempt < 10; ++attempt) {
            const int x =
                state_.player_x + static_cast<int>(rng.below(25)) - 12;
            const int y =
                state_.player_y + static_cast<int>(rng.below(25)) - 12;
            const int d = std::abs(x - state_.player_x) +
                          std::abs(y - state_.player_y);
            if (d < 5 || !in_bounds(x, y) || cell(x, y) != ground ||
                entity_at(x, y) != nullptr) {
                continue;
            }
            state_.entities.push_back({kind, x, y, health, 0});
            return;
        }
    };
    if (night && zombies < config_.max_zombies &&
        rng.chance(config_.zombie_spawn_chance)) {
        spawn_near(EntityKind::zombie, CellKind::grass, config_.zombie_health);
    }
    if (skeletons < config_.max_skeletons &&
        rng.chance(config_.skeleton_spawn_chance)) {
        spawn_near(EntityKind::skeleton, CellKind::path,
                   config_.skeleton_health);
    }
    if (!night) {
        std::erase_if(state_.entities, [&rng](const Entity& e) {
            return e.kind == EntityKind::zombie && rng.chance(0.1);
        });
    }
}

void World::update_status() {
    auto& s = state_.status;
    const std::int64_t t = state_.tick;
    if (t > 0) {
        if (t % config_.food_decay_ticks == 0) {
            --s.food;
        }
        if (t % config_.drink_decay_ticks == 0) {
            --s.drink;
        }
        if (!state_.sleeping && t % config_.energy_decay_ticks == 0) {
            --s.energy;
        }
        s.food = std::max(0, s.food);
        s.drink = std::max(0, s.drink);
        s.energy = std::max(0, s.energy);
        if (t % config_.starve_ticks == 0) {
            const int depleted =
                (s.food == 0) + (s.drink == 0) + (s.energy == 0);
            s.health -= depleted;
        }
        if (s.food > 0 && s.drink > 0 && s.energy > 0 &&
            t % config_.regen_ticks == 0 && s.health > 0) {
            s.health = std::min(kStatusMax, s.health + 1);
        }
    }
}

Observation World::observe() const {
    Observation obs;
    for (int row = 0; row < kViewHeight; ++row) {
        for (int col = 0; col < kViewWidth; ++col) {
            const int x = state_.player_x + col - kViewCenterCol;
            const int y = state_.player_y + row - kViewCenterRow;
            ObsCell& out = obs.local_view[row * kViewWidth + col];
            if (!in_bounds(x, y)) {
                out.code = kVoidCode;
            } else if (x == state_.player_x && y == state_.player_y) {
                out.code = kCellKindCount + static_cast<int>(EntityKind::player);
            } else if (const Entity* e = entity_at(x, y)) {
                out.code = kCellKindCount + static_cast<int>(e->kind);
            } else {
                out.code = static_cast<std::uint8_t>(cell(x, y));
            }
        }
    }
    obs.status = state_.status;
    obs.inventory = state_.inventory;
    obs.facing = state_.facing;
    return obs;
}

std::uint64_t World::state_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        h = fnv1a64(static_cast<const char*>(data), len, h);
    };
    mix(state_.grid.data(), state_.grid.size());
    for (const auto& e : state_.entities) {
        const int fields[4] = {static_cast<int>(e.kind), e.x, e.y, e.health};
        mix(fields, sizeof(fields));
    }
    const int player[3] = {state_.player_x, state_.player_y,
                           static_cast<int>(state_.facing)};
    mix(player, sizeof(player));
    mix(state_.inventory.data(), sizeof(state_.inventory));
    mix(&state_.status, sizeof(state_.status));
    std::uint32_t unlocked_mask = 0;
    for (Achievement a : state_.unlocked) {
        unlocked_mask |= 1u << static_cast<int>(a);
    }
    mix(&unlocked_mask, sizeof(unlocked_mask));
    mix(&state_.tick, sizeof(state_.tick));
    mix(state_.rng.state(), 4 * sizeof(std::uint64_t));
    return h;
}

}  // namespace adarefiner::env
