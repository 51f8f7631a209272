#include "adarefiner/policy/ppo.hpp"

#include <algorithm>
#include <numeric>

namespace adarefiner::rl {

GaeResult gae(const std::vector<double>& rewards,
              const std::vector<double>& values,
              const std::vector<std::uint8_t>& dones, double bootstrap_value,
              double gamma, double lambda) {
    const std::size_t n = rewards.size();
    if (values.size() != n || dones.size() != n) {
        throw std::invalid_argument("gae inputs must have equal length");
    }
    GaeResult out;
    out.advantages.assign(n, 0.0);
    out.returns.assign(n, 0.0);
    double next_advantage = 0.0;
    for (std::size_t idx = n; idx-- > 0;) {
        const double next_value =
            idx + 1 < n ? values[idx + 1] : bootstrap_value;
        const double mask = dones[idx] ? 0.0 : 1.0;
        const double delta =
            rewards[idx] + gamma * next_value * mask - values[idx];
        next_advantage = delta + gamma * lambda * mask * next_advantage;
        out.advantages[idx] = next_advantage;
        out.returns[idx] = next_advantage + values[idx];
    }
    return out;
}

std::vector<double> softmax_logits(const std::vector<double>& logits) {
    double max_logit = -1e300;
    for (double z : logits) {
        if (!std::isfinite(z)) {
            throw std::runtime_error("non-finite logit");
        }
        max_logit = std::max(max_logit, z);
    }
    std::vector<double> p(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - max_logit);
        sum += p[i];
    }
    for (double& x : p) {
        x /= sum;
    }
    return p;
}

namespace {

std::vector<double> forward_probs(const PolicyParams& params,
                                  const std::vector<float>& features,
                                  double* value) {
    Eigen::MatrixXf x(1, features.size());
    for (std::size_t i = 0; i < features.size(); ++i) {
        x(0, static_cast<int>(i)) = features[i];
    }
    const Eigen::MatrixXf logits = params.actor.forward(x);
    std::vector<double> raw(env::kActionCount);
    for (int j = 0; j < env::kActionCount; ++j) {
        raw[j] = static_cast<double>(logits(0, j));
    }
    if (value != nullptr) {
        *value = static_cast<double>(params.critic.forward(x)(0, 0));
    }
    return softmax_logits(raw);
}

}  // namespace

std::vector<double> action_probabilities(const PolicyParams& params,
                                         const std::vector<float>& features) {
    return forward_probs(params, features, nullptr);
}

ActResult act(const PolicyParams& params, const std::vector<float>& features,
              Rng& rng) {
    double value = 0.0;
    const std::vector<double> p = forward_probs(params, features, &value);
    const double u = rng.uniform();
    double cumulative = 0.0;
    int chosen = env::kActionCount - 1;
    for (int j = 0; j < env::kActionCount; ++j) {
        cumulative += p[j];
        if (u < cumulative) {
            chosen = j;
            break;
        }
    }
    return {static_cast<env::Action>(chosen), std::log(p[chosen]), value};
}

void normalize_advantages(std::vector<double>& advantages) {
    if (advantages.empty()) {
        return;
    }
    const double n = static_cast<double>(advantages.size());
    const double mean =
        std::accumulate(advantages.begin(), advantages.end(), 0.0) / n;
    double var = 0.0;
    for (double a : advantages) {
        var += (a - mean) * (a - mean);
    }
    const double std_dev = std::max(std::sqrt(var / n), 1e-8);
    for (double& a : advantages) {
        a = (a - mean) / std_dev;
    }
}

UpdateStats ppo_update(PolicyParams& params, const Rollout& rollout,
                       const PpoHyperparams& hp, Rng& rng) {
    const int n = rollout.size();
    if (n == 0) {
        throw std::invalid_argument("empty rollout");
    }
    GaeResult estimates =
        gae(rollout.rewards, rollout.values, rollout.dones,
            rollout.bootstrap_value, hp.gamma, hp.gae_lambda);
    std::vector<double> advantages = estimates.advantages;
    normalize_advantages(advantages);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const int minibatches = std::max(1, std::min(hp.minibatch_count, n));

    UpdateStats stats;
    int batches_done = 0;
    for (int epoch = 0; epoch < hp.update_epochs; ++epoch) {
        rng.shuffle(order);
        for (int mb = 0; mb < minibatches; ++mb) {
            const int begin = static_cast<int>(
                static_cast<std::int64_t>(mb) * n / minibatches);
            const int end = static_cast<int>(
                static_cast<std::int64_t>(mb + 1) * n / minibatches);
            const int size = end - begin;
            if (size <= 0) {
                continue;
            }
            Eigen::MatrixXf x(size, rollout.features.cols());
            std::vector<int> actions(size);
            std::vector<double> old_logp(size);
            std::vector<double> adv(size);
            std::vector<double> ret(size);
            for (int i = 0; i < size; ++i) {
                const int src = order[begin + i];
                x.row(i) = rollout.features.row(src);
                actions[i] = rollout.actions[src];
                old_logp[i] = rollout.log_probs[src];
                adv[i] = advantages[src];
                ret[i] = estimates.returns[src];
            }

            Mlp<float>::Grads actor_grads;
            Mlp<float>::Grads critic_grads;
            actor_grads.resize_like(params.actor);
            critic_grads.resize_like(params.critic);
            MinibatchLoss<float> loss;
            try {
                loss = ppo_minibatch<float>(params.actor, params.critic, x,
                                            actions, old_logp, adv, ret, hp,
                                            &actor_grads, &critic_grads);
            } catch (const std::runtime_error& e) {
                throw std::runtime_error(std::string(e.what()) +
                                         " (epoch " + std::to_string(epoch) +
                                         ", minibatch " + std::to_string(mb) +
                                         ")");
            }
            params.actor.adam_step(actor_grads, params.actor_adam,
                                   hp.learning_rate, hp.adam_epsilon);
            params.critic.adam_step(critic_grads, params.critic_adam,
                                    hp.learning_rate, hp.adam_epsilon);

            stats.clip_fraction += loss.clip_fraction;
            stats.policy_loss += loss.policy_loss;
            stats.value_loss += loss.value_loss;
            stats.entropy += loss.entropy;
            ++batches_done;
        }
    }
    if (batches_done > 0) {
        stats.clip_fraction /= batches_done;
        stats.policy_loss /= batches_done;
        stats.value_loss /= batches_done;
        stats.entropy /= batches_done;
    }
    return stats;
}

}  // namespace adarefiner::rl
