#include <doctest.h>

#include <cmath>
#include <vector>

#include "adarefiner/craftworld/world.hpp"
#include "adarefiner/policy/encoder.hpp"
#include "adarefiner/policy/ppo.hpp"

using namespace adarefiner;

namespace {

// O(T^2) reference implementation of GAE.
std::vector<double> brute_force_gae(const std::vector<double>& rewards,
                                    const std::vector<double>& values,
                                    const std::vector<std::uint8_t>& dones,
                                    double bootstrap, double gamma,
                                    double lambda) {
    const std::size_t n = rewards.size();
    std::vector<double> advantages(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        double coef = 1.0;
        for (std::size_t j = t; j < n; ++j) {
            const double next_value = j + 1 < n ? values[j + 1] : bootstrap;
            const double mask = dones[j] ? 0.0 : 1.0;
            const double delta =
                rewards[j] + gamma * next_value * mask - values[j];
            advantages[t] += coef * delta;
            if (dones[j]) {
                break;
            }
            coef *= gamma * lambda;
        }
    }
    return advantages;
}

struct Batch {
    Eigen::MatrixXd x;
    std::vector<int> actions;
    std::vector<double> old_log_probs;
    std::vector<double> advantages;
    std::vector<double> returns;
};

Batch random_batch(int n, int input, int action_count, Rng& rng) {
    Batch batch;
    batch.x.resize(n, input);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < input; ++j) {
            batch.x(i, j) = rng.normal();
        }
        batch.actions.push_back(static_cast<int>(rng.below(action_count)));
        batch.old_log_probs.push_back(
            std::log(1.0 / action_count) + 0.3 * rng.normal());
        batch.advantages.push_back(rng.normal());
        batch.returns.push_back(rng.normal());
    }
    return batch;
}

double loss_at(rl::Mlp<double>& actor, rl::Mlp<double>& critic,
               const Batch& batch, const rl::PpoHyperparams& hp) {
    return rl::ppo_minibatch<double>(actor, critic, batch.x, batch.actions,
                                     batch.old_log_probs, batch.advantages,
                                     batch.returns, hp, nullptr, nullptr)
        .total;
}

}  // namespace

TEST_CASE("gae matches the brute-force oracle") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(32));
        std::vector<double> rewards;
        std::vector<double> values;
        std::vector<std::uint8_t> dones;
        for (int t = 0; t < n; ++t) {
            rewards.push_back(rng.normal());
            values.push_back(rng.normal());
            dones.push_back(rng.uniform() < 0.15 ? 1 : 0);
        }
        const double bootstrap = rng.normal();
        const double gamma = 0.9 + 0.09 * rng.uniform();
        const double lambda = rng.uniform();

        const auto result =
            rl::gae(rewards, values, dones, bootstrap, gamma, lambda);
        const auto oracle =
            brute_force_gae(rewards, values, dones, bootstrap, gamma, lambda);
        for (int t = 0; t < n; ++t) {
            CHECK(result.advantages[t] ==
                  doctest::Approx(oracle[t]).epsilon(1e-10));
            CHECK(result.returns[t] ==
                  doctest::Approx(oracle[t] + values[t]).epsilon(1e-10));
        }
    }
}

TEST_CASE("softmax normalizes and rejects non-finite logits") {
    const auto p = rl::softmax_logits({1.0, 2.0, 3.0});
    CHECK(p[0] + p[1] + p[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p[2] > p[1]);
    CHECK_THROWS_AS(
        rl::softmax_logits({1.0, std::numeric_limits<double>::quiet_NaN()}),
        std::runtime_error);
    // large logits must not overflow
    const auto q = rl::softmax_logits({1000.0, 1000.0});
    CHECK(q[0] == doctest::Approx(0.5));
}

TEST_CASE("analytic gradients match central finite differences") {
    Rng rng(23);
    auto net = rl::make_policy<double>(6, 5, 77);
    rl::PpoHyperparams hp;
    hp.clip_ratio = 0.2;  // keep some samples unclipped
    const Batch batch = random_batch(8, 6, net.actor.output_dim(), rng);

    rl::Mlp<double>::Grads actor_grads;
    rl::Mlp<double>::Grads critic_grads;
    actor_grads.resize_like(net.actor);
    critic_grads.resize_like(net.critic);
    rl::ppo_minibatch<double>(net.actor, net.critic, batch.x, batch.actions,
                              batch.old_log_probs, batch.advantages,
                              batch.returns, hp, &actor_grads, &critic_grads);

    const double h = 1e-6;
    auto check_param = [&](double& param, double analytic) {
        const double saved = param;
        param = saved + h;
        const double plus = loss_at(net.actor, net.critic, batch, hp);
        param = saved - h;
        const double minus = loss_at(net.actor, net.critic, batch, hp);
        param = saved;
        const double numeric = (plus - minus) / (2.0 * h);
        const double scale = std::max({std::abs(numeric), std::abs(analytic),
                                       1e-8});
        CHECK(std::abs(numeric - analytic) / scale < 1e-3);
    };

    // 10 spot checks spread over every parameter block of both networks
    check_param(net.actor.w1(0, 0), actor_grads.w1(0, 0));
    check_param(net.actor.w1(4, 5), actor_grads.w1(4, 5));
    check_param(net.actor.w2(2, 3), actor_grads.w2(2, 3));
    check_param(net.actor.w3(1, 4), actor_grads.w3(1, 4));
    check_param(net.actor.b1(1), actor_grads.b1(1));
    check_param(net.actor.b3(2), actor_grads.b3(2));
    check_param(net.critic.w1(3, 2), critic_grads.w1(3, 2));
    check_param(net.critic.w2(0, 4), critic_grads.w2(0, 4));
    check_param(net.critic.w3(0, 1), critic_grads.w3(0, 1));
    check_param(net.critic.b3(0), critic_grads.b3(0));
}

TEST_CASE("clipped samples contribute exactly zero policy gradient") {
    auto net = rl::make_policy<double>(4, 3, 5);
    rl::PpoHyperparams hp;
    hp.clip_ratio = 0.1;
    hp.entropy_coef = 0.0;  // isolate the surrogate term

    Eigen::MatrixXd x(1, 4);
    x << 0.3, -0.2, 0.8, 0.1;
    const std::vector<int> actions{2};
    const std::vector<double> returns{0.0};

    // probe the sample's current log-probability
    const Eigen::MatrixXd logits = net.actor.forward(x);
    std::vector<double> raw(net.actor.output_dim());
    for (int j = 0; j < net.actor.output_dim(); ++j) {
        raw[j] = logits(0, j);
    }
    const double logp_new = std::log(rl::softmax_logits(raw)[2]);

    auto actor_grad_norm = [&](double ratio, double advantage) {
        rl::Mlp<double>::Grads actor_grads;
        rl::Mlp<double>::Grads critic_grads;
        actor_grads.resize_like(net.actor);
        critic_grads.resize_like(net.critic);
        const std::vector<double> old_logp{logp_new - std::log(ratio)};
        const auto loss = rl::ppo_minibatch<double>(
            net.actor, net.critic, x, actions, old_logp, {advantage}, returns,
            hp, &actor_grads, &critic_grads);
        (void)loss;
        return actor_grads.w1.norm() + actor_grads.w2.norm() +
               actor_grads.w3.norm() + actor_grads.b1.norm() +
               actor_grads.b2.norm() + actor_grads.b3.norm();
    };

    // (A > 0, ratio > 1 + eps) and (A < 0, ratio < 1 - eps) are clipped flat
    CHECK(actor_grad_norm(1.2, 1.0) == 0.0);
    CHECK(actor_grad_norm(0.8, -1.0) == 0.0);
    // inside the trust region the gradient is alive
    CHECK(actor_grad_norm(1.0, 1.0) > 0.0);
    // clipped but still improving directions keep their gradient
    CHECK(actor_grad_norm(1.2, -1.0) > 0.0);
    CHECK(actor_grad_norm(0.8, 1.0) > 0.0);
}

TEST_CASE("act is deterministic and consistent with the distribution") {
    auto net = rl::make_policy<float>(rl::feature_length(16), 32, 3);
    std::vector<float> features(rl::feature_length(16), 0.1f);
    Rng a(5);
    Rng b(5);
    const auto first = rl::act(net, features, a);
    const auto second = rl::act(net, features, b);
    CHECK(first.action == second.action);
    CHECK(first.log_prob == second.log_prob);
    CHECK(first.value == second.value);

    const auto probs = rl::action_probabilities(net, features);
    REQUIRE(static_cast<int>(probs.size()) == env::kActionCount);
    double sum = 0.0;
    for (double p : probs) {
        sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(first.log_prob ==
          doctest::Approx(std::log(probs[static_cast<int>(first.action)]))
              .epsilon(1e-6));
}

TEST_CASE("normalize_advantages centers and scales") {
    std::vector<double> advantages{1.0, 2.0, 3.0, 4.0};
    rl::normalize_advantages(advantages);
    double mean = 0.0;
    double var = 0.0;
    for (double a : advantages) {
        mean += a;
    }
    mean /= advantages.size();
    for (double a : advantages) {
        var += (a - mean) * (a - mean);
    }
    CHECK(std::abs(mean) < 1e-12);
    CHECK(var / advantages.size() == doctest::Approx(1.0).epsilon(1e-9));

    std::vector<double> constant{2.0, 2.0, 2.0};
    rl::normalize_advantages(constant);  // must not divide by zero
    for (double a : constant) {
        CHECK(std::isfinite(a));
    }
}

TEST_CASE("ppo_update is deterministic and moves the parameters") {
    const int input = rl::feature_length(8);
    rl::PpoHyperparams hp;
    hp.horizon = 64;
    hp.update_epochs = 2;
    hp.hidden = 16;

    auto make_rollout = [&](Rng& rng) {
        rl::Rollout rollout;
        rollout.features = Eigen::MatrixXf::Zero(hp.horizon, input);
        for (int t = 0; t < hp.horizon; ++t) {
            for (int j = 0; j < input; ++j) {
                rollout.features(t, j) = static_cast<float>(rng.uniform());
            }
            rollout.actions.push_back(
                static_cast<int>(rng.below(env::kActionCount)));
            rollout.log_probs.push_back(std::log(1.0 / env::kActionCount));
            rollout.values.push_back(rng.uniform());
            rollout.rewards.push_back(rng.uniform());
            rollout.dones.push_back(0);
        }
        return rollout;
    };

    Rng data_rng(9);
    const auto rollout = make_rollout(data_rng);
    auto net_a = rl::make_policy<float>(input, hp.hidden, 4);
    auto net_b = rl::make_policy<float>(input, hp.hidden, 4);
    const Eigen::MatrixXf before = net_a.actor.w1;
    Rng ra(2);
    Rng rb(2);
    const auto stats_a = rl::ppo_update(net_a, rollout, hp, ra);
    const auto stats_b = rl::ppo_update(net_b, rollout, hp, rb);
    CHECK(net_a.actor.w1 == net_b.actor.w1);
    CHECK(net_a.critic.w3 == net_b.critic.w3);
    CHECK(stats_a.policy_loss == stats_b.policy_loss);
    CHECK((net_a.actor.w1 - before).norm() > 0.0f);
    CHECK(stats_a.entropy > 0.0);
}

TEST_CASE("encoder layout and goal normalization") {
    const int dim = 16;
    CHECK(rl::feature_length(dim) ==
          env::kViewCells * env::kObsAlphabet + 4 + env::kItemCount + 4 + dim);

    env::World world;
    const auto obs = world.reset(7);

    text::EmbeddingVector goal(dim, 0.0);
    goal[3] = 2.0;
    goal[7] = 2.0;
    const auto features = rl::encode_observation(obs, goal, dim);
    REQUIRE(static_cast<int>(features.size()) == rl::feature_length(dim));

    // cell one-hots: exactly one active code per view cell
    double cell_sum = 0.0;
    for (int i = 0; i < env::kViewCells * env::kObsAlphabet; ++i) {
        cell_sum += features[i];
    }
    CHECK(cell_sum == doctest::Approx(env::kViewCells));

    // goal block is L2-normalized
    double goal_norm = 0.0;
    for (int i = rl::feature_length(dim) - dim; i < rl::feature_length(dim);
         ++i) {
        goal_norm += features[i] * features[i];
    }
    CHECK(goal_norm == doctest::Approx(1.0).epsilon(1e-5));

    // the zero goal passes through as zeros
    const auto zero_features =
        rl::encode_observation(obs, text::EmbeddingVector(dim, 0.0), dim);
    for (int i = rl::feature_length(dim) - dim; i < rl::feature_length(dim);
         ++i) {
        CHECK(zero_features[i] == 0.0f);
    }

    CHECK_THROWS_AS(
        rl::encode_observation(obs, text::EmbeddingVector(dim + 1, 0.0), dim),
        std::invalid_argument);
}
