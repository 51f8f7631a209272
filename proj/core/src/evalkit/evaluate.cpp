#include "adarefiner/evalkit/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "adarefiner/craftworld/scene_text.hpp"
#include "adarefiner/craftworld/tech_tree.hpp"
#include "adarefiner/craftworld/world.hpp"
#include "adarefiner/gateway/subgoals.hpp"
#include "adarefiner/loop/orchestrator.hpp"
#include "adarefiner/loop/replay_buffer.hpp"
#include "adarefiner/policy/encoder.hpp"

namespace adarefiner::evalkit {
namespace {

bool cow_visible(const env::Observation& obs) {
    constexpr std::uint8_t cow_code =
        env::kCellKindCount + static_cast<int>(env::EntityKind::cow);
    return std::any_of(obs.local_view.begin(), obs.local_view.end(),
                       [](const env::ObsCell& c) { return c.code == cow_code; });
}

int argmax_action(const std::vector<double>& probs) {
    return static_cast<int>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
}

}  // namespace

EvalReport evaluate(const RunConfig& config, const rl::PolicyParams& policy,
                    int episodes, std::uint64_t base_seed) {
    if (episodes < 1) {
        throw std::invalid_argument("episodes must be >= 1");
    }
    const auto& lc = config.loop;
    const int embed_dim = config.embed.dimension;
    const text::ScoreMode mode = (config.score.binary || lc.binary_score)
                                     ? text::ScoreMode::binary
                                     : text::ScoreMode::cosine;

    std::unique_ptr<llm::CompletionBackend> adapter;
    std::unique_ptr<llm::CompletionBackend> decision;
    if (!lc.no_llm) {
        if (!lc.no_adapter) {
            adapter = llm::make_backend(config.adapter, llm::Role::adapter);
        }
        decision = llm::make_backend(config.decision, llm::Role::decision);
    }

    env::World world(config.env);
    EvalReport report;
    report.episodes = episodes;
    std::vector<std::set<env::Achievement>> episode_unlocks;
    std::int64_t total_steps = 0;
    std::int64_t impossible_steps = 0;

    for (int ep = 0; ep < episodes; ++ep) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(ep);
        std::uint64_t stream = seed;
        Rng act_rng(splitmix64(stream));
        Rng llm_rng(splitmix64(stream));
        env::Observation obs = world.reset(seed);
        loop::ReplayBuffer buffer(static_cast<std::size_t>(lc.buffer_capacity));
        text::EmbeddingVector g_emb(embed_dim, 0.0);
        double episode_return = 0.0;

        for (std::int64_t t = 0; !world.done(); ++t) {
            if (!lc.no_llm && loop::should_query(t, lc.n_gen)) {
                if (t > 0) {
                    buffer.set_score(text::comprehension_score(
                        buffer.goals(),
                        text::render_trajectory(buffer.window()), mode,
                        config.embed));
                    buffer.window().clear();
                }
                const llm::PromptContext ctx = buffer.prompt_context(
                    obs, lc.prompt_actions, lc.prompt_goals);
                llm::OracleSnapshot snapshot{world.state().unlocked,
                                             obs.status, cow_visible(obs),
                                             buffer.score()};
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
                        summary = adapter->complete(
                            llm::build_adapter_prompt(ctx, buffer.score(),
                                                      !lc.no_l_score),
                            llm_rng.next_u64());
                        decision_prompt =
                            llm::build_decision_prompt(ctx, summary);
                    }
                    const std::string completion = decision->complete(
                        decision_prompt, llm_rng.next_u64());
                    if (auto parsed = llm::parse_subgoals(completion)) {
                        buffer.set_guidance(summary, parsed->goals,
                                            buffer.score());
                        g_emb = text::embed(text::join_goals(parsed->goals),
                                            config.embed);
                    }
                } catch (const llm::TransportError&) {
                } catch (const llm::ProtocolError&) {
                } catch (const std::invalid_argument&) {
                }
            }

            const std::vector<float> features =
                rl::encode_observation(obs, g_emb, embed_dim);
            int action_code;
            if (config.eval.argmax) {
                action_code =
                    argmax_action(rl::action_probabilities(policy, features));
            } else {
                action_code = static_cast<int>(
                    rl::act(policy, features, act_rng).action);
            }
            const auto action = static_cast<env::Action>(action_code);
            if (!world.feasible(action)) {
                ++impossible_steps;
            }
            ++total_steps;

            const env::StepResult step = world.step(action);
            episode_return += step.reward;
            buffer.window().push(std::string(env::action_name(action)));
            buffer.push({{},
                         std::string(env::action_name(action)),
                         {},
                         step.reward,
                         buffer.goals()});
            obs = step.observation;
        }
        episode_unlocks.push_back(world.state().unlocked);
        report.episode_returns.push_back(episode_return);
    }

    report.success_rates = success_rates(episode_unlocks);
    report.score = crafter_score(report.success_rates);

    double mean = 0.0;
    for (double r : report.episode_returns) {
        mean += r;
    }
    mean /= episodes;
    double var = 0.0;
    for (double r : report.episode_returns) {
        var += (r - mean) * (r - mean);
    }
    report.mean_reward = mean;
    report.reward_std = std::sqrt(var / episodes);

    for (const auto& [achievement, rate] : report.success_rates) {
        if (rate > 0.0) {
            ++report.achievements_completed;
            report.max_depth_completed =
                std::max(report.max_depth_completed,
                         env::achievement_depth(achievement));
        }
    }
    report.impossible_action_rate =
        total_steps > 0
            ? static_cast<double>(impossible_steps) / total_steps
            : 0.0;
    return report;
}

EvalReport evaluate_checkpoint(const std::filesystem::path& checkpoint,
                               const RunConfig& config, int episodes) {
    const int embed_dim = config.embed.dimension;
    const rl::PolicyFingerprint expected{rl::feature_length(embed_dim),
                                         config.ppo.hidden, embed_dim,
                                         env::kActionCount};
    rl::PolicyParams policy;
    rl::load_checkpoint(checkpoint.string(), policy, expected);
    return evaluate(config, policy, episodes, config.loop.seed);
}

void write_eval_report(const EvalReport& report,
                       const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["episodes"] = report.episodes;
    nlohmann::json rates = nlohmann::json::object();
    for (const auto& [achievement, rate] : report.success_rates) {
        rates[std::string(env::achievement_name(achievement))] = rate;
    }
    doc["success_rates"] = rates;
    doc["score"] = report.score;
    doc["mean_reward"] = report.mean_reward;
    doc["reward_std"] = report.reward_std;
    doc["achievements_completed"] = report.achievements_completed;
    doc["max_depth_completed"] = report.max_depth_completed;
    doc["impossible_action_rate"] = report.impossible_action_rate;
    doc["episode_returns"] = report.episode_returns;

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write eval report: " + path.string());
    }
    out << doc.dump(2) << "\n";
}

}  // namespace adarefiner::evalkit
