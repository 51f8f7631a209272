#include "adarefiner/loop/orchestrator.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "adarefiner/craftworld/world.hpp"
#include "adarefiner/gateway/subgoals.hpp"
#include "adarefiner/loop/replay_buffer.hpp"
#include "adarefiner/policy/checkpoint.hpp"
#include "adarefiner/policy/encoder.hpp"
#include "adarefiner/sft/dataset.hpp"

namespace adarefiner::loop {
namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

bool cow_visible(const env::Observation& obs) {
    constexpr std::uint8_t cow_code =
        env::kCellKindCount + static_cast<int>(env::EntityKind::cow);
    for (const auto& cell : obs.local_view) {
        if (cell.code == cow_code) {
            return true;
        }
    }
    return false;
}

std::vector<std::string> unlock_names(const env::StepResult& result) {
    std::vector<std::string> names;
    for (const auto& event : result.events) {
        for (auto a : event.unlocks) {
            names.emplace_back(env::achievement_name(a));
        }
    }
    return names;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    return out;
}

}  // namespace

bool should_query(std::int64_t t, int n_gen) {
    if (n_gen < 1) {
        throw std::invalid_argument("n_gen must be >= 1");
    }
    return t % n_gen == 0;
}

TrainResult train(const RunConfig& config, const fs::path& run_dir) {
    const auto& lc = config.loop;
    fs::create_directories(run_dir / "checkpoints");
    open_out(run_dir / "config-resolved.ini") << render_config(config);

    const int embed_dim = config.embed.dimension;
    const int input_dim = rl::feature_length(embed_dim);
    const text::ScoreMode mode = (config.score.binary || lc.binary_score)
                                     ? text::ScoreMode::binary
                                     : text::ScoreMode::cosine;

    // Independent deterministic streams, all derived from the run seed.
    Rng master(lc.seed);
    const std::uint64_t policy_seed = master.next_u64();
    Rng act_rng(master.next_u64());
    Rng ppo_rng(master.next_u64());
    Rng env_rng(master.next_u64());
    Rng llm_rng(master.next_u64());

    rl::PolicyParams policy =
        rl::make_policy<float>(input_dim, config.ppo.hidden, policy_seed);

    std::unique_ptr<llm::CompletionBackend> adapter;
    std::unique_ptr<llm::CompletionBackend> decision;
    if (!lc.no_llm) {
        if (!lc.no_adapter) {
            adapter = llm::make_backend(config.adapter, llm::Role::adapter);
        }
        decision = llm::make_backend(config.decision, llm::Role::decision);
    }

    env::World world(config.env);
    ReplayBuffer buffer(static_cast<std::size_t>(lc.buffer_capacity));
    sft::SftDataset dataset(static_cast<std::size_t>(config.sft.capacity));
    sft::FinetuneOptions ft_options;
    ft_options.hook_url = config.sft.hook_url;
    ft_options.snapshot_dir = run_dir.string();

    std::ofstream steps_csv = open_out(run_dir / "steps.csv");
    steps_csv << "step,reward,episode_return,l,decision_calls,adapter_calls,"
                 "dropped_queries,sft_triggers,done\n";
    std::ofstream episodes_csv = open_out(run_dir / "episodes.csv");
    episodes_csv << "episode,end_step,length,return,unlocked_count,unlocked\n";
    std::ofstream probs_csv = open_out(run_dir / "probs.csv");
    probs_csv << "step";
    for (int a = 0; a < env::kActionCount; ++a) {
        probs_csv << ",p_" << env::action_name(static_cast<env::Action>(a));
    }
    probs_csv << "\n";

    TrainResult result;
    env::Observation obs = world.reset(env_rng.next_u64());
    std::vector<std::string> prev_sees = env::render_scene_text(obs).sees;
    text::EmbeddingVector g_emb(embed_dim, 0.0);

    rl::Rollout rollout;
    rollout.features.resize(config.ppo.horizon, input_dim);
    int rollout_fill = 0;

    double episode_return = 0.0;
    std::int64_t episode_start = 0;
    double total_episode_return = 0.0;

    for (std::int64_t t = 0; t < lc.total_steps; ++t) {
        if (!lc.no_llm && should_query(t, lc.n_gen)) {
            if (t > 0) {
                // Score the completed window first so the fresh prompts (and
                // the recorded pair) carry the fresh score.
                const double l_new = text::comprehension_score(
                    buffer.goals(), text::render_trajectory(buffer.window()),
                    mode, config.embed);
                buffer.set_score(l_new);
                if (!lc.no_adapter && !buffer.summary().empty()) {
                    const llm::PromptContext record_ctx = buffer.prompt_context(
                        obs, lc.prompt_actions, lc.prompt_goals);
                    sft::record_sft_pair(dataset, record_ctx, l_new,
                                         buffer.summary(), t, !lc.no_l_score);
                }
                buffer.window().clear();
            }
            const llm::PromptContext ctx =
                buffer.prompt_context(obs, lc.prompt_actions, lc.prompt_goals);
            llm::OracleSnapshot snapshot{world.state().unlocked, obs.status,
                                         cow_visible(obs), buffer.score()};
            for (auto* backend : {adapter.get(), decision.get()}) {
                if (auto* scripted =
                        dynamic_cast<llm::ScriptedBackend*>(backend)) {
                    scripted->set_snapshot(snapshot);
                }
            }
            try {
                std::string summary;
                llm::PromptBundle decision_prompt;
                if (lc.no_adapter) {
                    decision_prompt = llm::build_decision_prompt_no_adapter(
                        ctx, buffer.score());
                } else {
                    const llm::PromptBundle adapter_prompt =
                        llm::build_adapter_prompt(ctx, buffer.score(),
                                                  !lc.no_l_score);
                    summary =
                        adapter->complete(adapter_prompt, llm_rng.next_u64());
                    ++result.adapter_calls;
                    decision_prompt = llm::build_decision_prompt(ctx, summary);
                }
                const std::string completion =
                    decision->complete(decision_prompt, llm_rng.next_u64());
                ++result.decision_calls;
                if (auto parsed = llm::parse_subgoals(completion)) {
                    buffer.set_guidance(summary, parsed->goals, buffer.score());
                    g_emb = text::embed(text::join_goals(parsed->goals),
                                        config.embed);
                } else {
                    ++result.dropped_queries;
                }
            } catch (const llm::TransportError&) {
                ++result.dropped_queries;
            } catch (const llm::ProtocolError&) {
                ++result.dropped_queries;
            } catch (const std::invalid_argument&) {
                ++result.dropped_queries;
            }
        }

        const std::vector<float> features =
            rl::encode_observation(obs, g_emb, embed_dim);
        if (lc.probs_log_interval > 0 && t % lc.probs_log_interval == 0) {
            probs_csv << t;
            for (double p : rl::action_probabilities(policy, features)) {
                probs_csv << "," << fmt(p);
            }
            probs_csv << "\n";
        }

        const rl::ActResult chosen = rl::act(policy, features, act_rng);
        env::StepResult step;
        try {
            step = world.step(chosen.action);
        } catch (const std::exception& e) {
            throw std::runtime_error("simulator failure at step " +
                                     std::to_string(t) + ": " + e.what());
        }
        episode_return += step.reward;

        buffer.window().push(std::string(env::action_name(chosen.action)),
                             unlock_names(step));
        std::vector<std::string> next_sees =
            env::render_scene_text(step.observation).sees;
        buffer.push({prev_sees, std::string(env::action_name(chosen.action)),
                     next_sees, step.reward, buffer.goals()});

        rollout.features.row(rollout_fill) =
            Eigen::Map<const Eigen::RowVectorXf>(
                features.data(), static_cast<Eigen::Index>(features.size()));
        rollout.actions.push_back(static_cast<int>(chosen.action));
        rollout.log_probs.push_back(chosen.log_prob);
        rollout.values.push_back(chosen.value);
        rollout.rewards.push_back(step.reward);
        rollout.dones.push_back(step.done ? 1 : 0);
        ++rollout_fill;

        if (step.done) {
            const auto& unlocked = world.state().unlocked;
            episodes_csv << result.episodes << "," << t << ","
                         << (t - episode_start + 1) << ","
                         << fmt(episode_return) << "," << unlocked.size()
                         << ",";
            bool first = true;
            for (auto a : unlocked) {
                episodes_csv << (first ? "" : "|") << env::achievement_name(a);
                first = false;
            }
            episodes_csv << "\n";
            ++result.episodes;
            total_episode_return += episode_return;
            episode_return = 0.0;
            episode_start = t + 1;
            obs = world.reset(env_rng.next_u64());
            prev_sees = env::render_scene_text(obs).sees;
        } else {
            obs = step.observation;
            prev_sees = std::move(next_sees);
        }

        steps_csv << t << "," << fmt(step.reward) << ","
                  << fmt(episode_return) << "," << fmt(buffer.score()) << ","
                  << result.decision_calls << "," << result.adapter_calls
                  << "," << result.dropped_queries << ","
                  << result.sft_triggers << "," << (step.done ? 1 : 0)
                  << "\n";

        if (rollout_fill == config.ppo.horizon) {
            if (rollout.dones.back()) {
                rollout.bootstrap_value = 0.0;
            } else {
                const std::vector<float> next_features =
                    rl::encode_observation(obs, g_emb, embed_dim);
                Eigen::MatrixXf x(1, input_dim);
                x.row(0) = Eigen::Map<const Eigen::RowVectorXf>(
                    next_features.data(), input_dim);
                rollout.bootstrap_value =
                    static_cast<double>(policy.critic.forward(x)(0, 0));
            }
            try {
                rl::ppo_update(policy, rollout, config.ppo, ppo_rng);
            } catch (const std::exception& e) {
                throw std::runtime_error("policy update failure at step " +
                                         std::to_string(t) + ": " + e.what());
            }
            ++result.ppo_updates;
            rollout.actions.clear();
            rollout.log_probs.clear();
            rollout.values.clear();
            rollout.rewards.clear();
            rollout.dones.clear();
            rollout_fill = 0;
        }

        if (sft::maybe_finetune(t + 1, config.sft.n_sft, adapter.get(),
                                dataset, ft_options) ==
            sft::FinetuneOutcome::triggered) {
            ++result.sft_triggers;
        }
    }

    sft::export_sft_jsonl(dataset, run_dir / "sft-dataset.jsonl");

    const rl::PolicyFingerprint fingerprint{input_dim, config.ppo.hidden,
                                            embed_dim, env::kActionCount};
    const fs::path checkpoint_path = run_dir / "checkpoints" / "final.ckpt";
    rl::save_checkpoint(checkpoint_path.string(), policy, fingerprint,
                        lc.total_steps);

    result.steps = lc.total_steps;
    result.sft_pairs = static_cast<std::int64_t>(dataset.size());
    result.checkpoint_path = checkpoint_path.string();
    result.mean_episode_return =
        result.episodes > 0 ? total_episode_return / result.episodes : 0.0;
    return result;
}

}  // namespace adarefiner::loop
