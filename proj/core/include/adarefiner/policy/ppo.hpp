#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "adarefiner/craftworld/types.hpp"
#include "adarefiner/policy/mlp.hpp"
#include "adarefiner/rng.hpp"

namespace adarefiner::rl {

// Table-5 values first; the rest are artifact defaults, all config-exposed.
struct PpoHyperparams {
    double learning_rate = 7e-4;
    int update_epochs = 16;
    double gamma = 0.97;
    double adam_epsilon = 1e-8;
    double clip_ratio = 0.1;
    double gae_lambda = 0.95;
    double entropy_coef = 0.01;
    double value_coef = 0.5;
    int horizon = 1024;
    int minibatch_count = 4;
    int hidden = 256;
};

template <typename Scalar>
struct PolicyNet {
    Mlp<Scalar> actor;   // separate trunks: 17 logits
    Mlp<Scalar> critic;  // 1 value

    typename Mlp<Scalar>::AdamState actor_adam;
    typename Mlp<Scalar>::AdamState critic_adam;
};

using PolicyParams = PolicyNet<float>;

template <typename Scalar>
PolicyNet<Scalar> make_policy(int input_dim, int hidden, std::uint64_t seed) {
    Rng rng(seed);
    PolicyNet<Scalar> net;
    net.actor = Mlp<Scalar>(input_dim, hidden, env::kActionCount, rng, 0.01);
    net.critic = Mlp<Scalar>(input_dim, hidden, 1, rng, 1.0);
    return net;
}

struct ActResult {
    env::Action action;
    double log_prob;
    double value;
};

struct Rollout {
    Eigen::MatrixXf features;  // horizon x input_dim
    std::vector<int> actions;
    std::vector<double> log_probs;
    std::vector<double> values;
    std::vector<double> rewards;
    std::vector<std::uint8_t> dones;
    double bootstrap_value = 0.0;

    int size() const { return static_cast<int>(actions.size()); }
};

struct UpdateStats {
    double clip_fraction = 0.0;
    double policy_loss = 0.0;
    double value_loss = 0.0;
    double entropy = 0.0;
};

struct GaeResult {
    std::vector<double> advantages;
    std::vector<double> returns;
};

// delta_t = r_t + gamma*v_{t+1}*(1-done_t) - v_t;
// A_t = delta_t + gamma*lambda*(1-done_t)*A_{t+1}; returns = A + v.
GaeResult gae(const std::vector<double>& rewards,
              const std::vector<double>& values,
              const std::vector<std::uint8_t>& dones, double bootstrap_value,
              double gamma, double lambda);

// Softmax probabilities in double precision; throws on non-finite logits.
std::vector<double> softmax_logits(const std::vector<double>& logits);

ActResult act(const PolicyParams& params, const std::vector<float>& features,
              Rng& rng);

std::vector<double> action_probabilities(const PolicyParams& params,
                                         const std::vector<float>& features);

UpdateStats ppo_update(PolicyParams& params, const Rollout& rollout,
                       const PpoHyperparams& hp, Rng& rng);

// --- templated internals (also instantiated at double by the gradient
// checks) ---

template <typename Scalar>
struct MinibatchLoss {
    double policy_loss = 0.0;
    double value_loss = 0.0;
    double entropy = 0.0;
    double clip_fraction = 0.0;
    double total = 0.0;  // policy - ent_coef*entropy + value_coef*value
};

// Computes the mean PPO loss over a minibatch and accumulates parameter
// gradients of that mean into actor_grads/critic_grads.
template <typename Scalar>
MinibatchLoss<Scalar> ppo_minibatch(
    const Mlp<Scalar>& actor, const Mlp<Scalar>& critic,
    const typename Mlp<Scalar>::Matrix& x, const std::vector<int>& actions,
    const std::vector<double>& old_log_probs,
    const std::vector<double>& advantages, const std::vector<double>& returns,
    const PpoHyperparams& hp, typename Mlp<Scalar>::Grads* actor_grads,
    typename Mlp<Scalar>::Grads* critic_grads) {
    using Matrix = typename Mlp<Scalar>::Matrix;
    const int n = static_cast<int>(actions.size());
    const double eps = hp.clip_ratio;

    typename Mlp<Scalar>::Cache actor_cache;
    Matrix logits = actor.forward(x, &actor_cache);
    typename Mlp<Scalar>::Cache critic_cache;
    Matrix values = critic.forward(x, &critic_cache);

    MinibatchLoss<Scalar> loss;
    Matrix dlogits = Matrix::Zero(logits.rows(), logits.cols());
    Matrix dvalues = Matrix::Zero(values.rows(), values.cols());

    for (int i = 0; i < n; ++i) {
        // Softmax in double precision for numerical stability.
        const int k = static_cast<int>(logits.cols());
        double max_logit = -1e300;
        for (int j = 0; j < k; ++j) {
            const double z = static_cast<double>(logits(i, j));
            if (!std::isfinite(z)) {
                throw std::runtime_error("non-finite logit in ppo update");
            }
            max_logit = std::max(max_logit, z);
        }
        double sum = 0.0;
        std::vector<double> p(k);
        for (int j = 0; j < k; ++j) {
            p[j] = std::exp(static_cast<double>(logits(i, j)) - max_logit);
            sum += p[j];
        }
        double entropy = 0.0;
        for (int j = 0; j < k; ++j) {
            p[j] /= sum;
            if (p[j] > 0.0) {
                entropy -= p[j] * std::log(p[j]);
            }
        }
        const int a = actions[i];
        const double logp_new = std::log(p[a]);
        const double ratio = std::exp(logp_new - old_log_probs[i]);
        const double adv = advantages[i];
        const double clipped_ratio = std::clamp(ratio, 1.0 - eps, 1.0 + eps);
        const double surrogate = std::min(ratio * adv, clipped_ratio * adv);
        const bool grad_clipped =
            (adv > 0.0 && ratio > 1.0 + eps) || (adv < 0.0 && ratio < 1.0 - eps);
        const double coef = grad_clipped ? 0.0 : ratio * adv;

        loss.policy_loss += -surrogate;
        loss.entropy += entropy;
        if (ratio > 1.0 + eps || ratio < 1.0 - eps) {
            loss.clip_fraction += 1.0;
        }

        const double v = static_cast<double>(values(i, 0));
        const double verr = v - returns[i];
        loss.value_loss += verr * verr;

        for (int j = 0; j < k; ++j) {
            const double onehot = j == a ? 1.0 : 0.0;
            // d(-surrogate)/dz + ent_coef * d(-H)/dz, averaged over the batch
            const double dpolicy = -coef * (onehot - p[j]);
            const double dentropy =
                hp.entropy_coef * p[j] * (std::log(std::max(p[j], 1e-300)) +
                                          entropy);
            dlogits(i, j) = static_cast<Scalar>((dpolicy + dentropy) / n);
        }
        dvalues(i, 0) = static_cast<Scalar>(hp.value_coef * 2.0 * verr / n);
    }

    loss.policy_loss /= n;
    loss.value_loss /= n;
    loss.entropy /= n;
    loss.clip_fraction /= n;
    loss.total = loss.policy_loss - hp.entropy_coef * loss.entropy +
                 hp.value_coef * loss.value_loss;
    if (!std::isfinite(loss.total)) {
        throw std::runtime_error("non-finite ppo loss");
    }

    if (actor_grads != nullptr) {
        actor.backward(x, actor_cache, dlogits, *actor_grads);
    }
    if (critic_grads != nullptr) {
        critic.backward(x, critic_cache, dvalues, *critic_grads);
    }
    return loss;
}

// Mean-0/std-1 normalization with a std floor of 1e-8.
void normalize_advantages(std::vector<double>& advantages);

}  // namespace adarefiner::rl
