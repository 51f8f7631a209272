#include <benchmark/benchmark.h>

#include "adarefiner/craftworld/world.hpp"
#include "adarefiner/policy/encoder.hpp"
#include "adarefiner/policy/ppo.hpp"
#include "adarefiner/textembed/embed.hpp"

namespace {

using namespace adarefiner;

void BM_WorldStep(benchmark::State& state) {
    env::World world;
    world.reset(1);
    Rng rng(2);
    for (auto _ : state) {
        if (world.done()) {
            world.reset(rng.next_u64());
        }
        auto action = static_cast<env::Action>(rng.below(env::kActionCount));
        benchmark::DoNotOptimize(world.step(action));
    }
}
BENCHMARK(BM_WorldStep);

void BM_Embed(benchmark::State& state) {
    const std::string text =
        "collect wood move left move up collect stone place table "
        "make wood pickaxe collect coal defeat zombie eat cow";
    for (auto _ : state) {
        benchmark::DoNotOptimize(text::embed(text));
    }
}
BENCHMARK(BM_Embed);

void BM_PolicyAct(benchmark::State& state) {
    const int dim = 64;
    auto policy = rl::make_policy<float>(rl::feature_length(dim), 64, 7);
    env::World world;
    const env::Observation obs = world.reset(3);
    const text::EmbeddingVector g(dim, 0.5);
    const auto features = rl::encode_observation(obs, g, dim);
    Rng rng(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rl::act(policy, features, rng));
    }
}
BENCHMARK(BM_PolicyAct);

void BM_PpoUpdate(benchmark::State& state) {
    const int dim = 64;
    const int input = rl::feature_length(dim);
    auto policy = rl::make_policy<float>(input, 64, 11);
    rl::PpoHyperparams hp;
    hp.horizon = 256;
    hp.update_epochs = 4;
    Rng rng(5);
    rl::Rollout rollout;
    rollout.features = Eigen::MatrixXf::Zero(hp.horizon, input);
    for (int t = 0; t < hp.horizon; ++t) {
        for (int j = 0; j < input; ++j) {
            rollout.features(t, j) = static_cast<float>(rng.uniform());
        }
        rollout.actions.push_back(static_cast<int>(rng.below(17)));
        rollout.log_probs.push_back(-2.0);
        rollout.values.push_back(rng.uniform());
        rollout.rewards.push_back(rng.uniform());
        rollout.dones.push_back(0);
    }
    for (auto _ : state) {
        auto copy = policy;
        Rng update_rng(6);
        benchmark::DoNotOptimize(rl::ppo_update(copy, rollout, hp, update_rng));
    }
}
BENCHMARK(BM_PpoUpdate);

}  // namespace
