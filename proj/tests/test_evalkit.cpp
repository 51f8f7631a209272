#include <doctest.h>

#include <mpfr.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

#include <json.hpp>

#include "adarefiner/evalkit/curves.hpp"
#include "adarefiner/evalkit/evaluate.hpp"
#include "adarefiner/evalkit/metrics.hpp"
#include "adarefiner/loop/orchestrator.hpp"
#include "adarefiner/policy/encoder.hpp"
#include "adarefiner/rng.hpp"

using namespace adarefiner;
namespace fs = std::filesystem;

namespace {

std::map<env::Achievement, double> rates_from(
    const std::vector<double>& values) {
    REQUIRE(values.size() == env::kAchievementCount);
    std::map<env::Achievement, double> rates;
    for (std::size_t i = 0; i < values.size(); ++i) {
        rates[static_cast<env::Achievement>(i)] = values[i];
    }
    return rates;
}

// 256-bit reference for exp(mean(ln(1 + s_i))) - 1.
double mpfr_score(const std::vector<double>& values) {
    mpfr_t acc;
    mpfr_t term;
    mpfr_init2(acc, 256);
    mpfr_init2(term, 256);
    mpfr_set_zero(acc, 1);
    for (double s : values) {
        mpfr_set_d(term, s, MPFR_RNDN);
        mpfr_log1p(term, term, MPFR_RNDN);
        mpfr_add(acc, acc, term, MPFR_RNDN);
    }
    mpfr_div_ui(acc, acc, static_cast<unsigned long>(values.size()),
                MPFR_RNDN);
    mpfr_expm1(acc, acc, MPFR_RNDN);
    const double out = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clear(acc);
    mpfr_clear(term);
    return out;
}

}  // namespace

TEST_CASE("crafter score fixed points") {
    CHECK(evalkit::crafter_score(rates_from(
              std::vector<double>(22, 0.0))) == doctest::Approx(0.0));
    CHECK(evalkit::crafter_score(rates_from(
              std::vector<double>(22, 100.0))) == doctest::Approx(100.0));

    // one achievement at 100%, the rest at zero
    std::vector<double> lone(22, 0.0);
    lone[0] = 100.0;
    CHECK(evalkit::crafter_score(rates_from(lone)) ==
          doctest::Approx(std::expm1(std::log1p(100.0) / 22.0))
              .epsilon(1e-12));
    CHECK(evalkit::crafter_score(rates_from(lone)) ==
          doctest::Approx(0.23340).epsilon(1e-4));
}

TEST_CASE("crafter score matches the 256-bit oracle") {
    Rng rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> values;
        for (int i = 0; i < 22; ++i) {
            double s = 100.0 * rng.uniform();
            if (rng.uniform() < 0.25) {
                s = 0.0;  // sparse rates are the common case
            }
            values.push_back(s);
        }
        const double got = evalkit::crafter_score(rates_from(values));
        const double want = mpfr_score(values);
        CHECK(std::abs(got - want) <=
              1e-9 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("crafter score rejects bad input") {
    std::map<env::Achievement, double> short_map;
    short_map[env::Achievement::collect_wood] = 50.0;
    CHECK_THROWS_AS(evalkit::crafter_score(short_map), std::invalid_argument);
    CHECK_THROWS_AS(
        evalkit::crafter_score(rates_from(std::vector<double>(22, -1.0))),
        std::invalid_argument);
    CHECK_THROWS_AS(
        evalkit::crafter_score(rates_from(std::vector<double>(22, 100.5))),
        std::invalid_argument);
}

TEST_CASE("crafter score is monotone in each rate") {
    Rng rng(5);
    std::vector<double> values;
    for (int i = 0; i < 22; ++i) {
        values.push_back(100.0 * rng.uniform());
    }
    const double base = evalkit::crafter_score(rates_from(values));
    for (int i = 0; i < 22; ++i) {
        auto bumped = values;
        bumped[i] = std::min(100.0, bumped[i] + 5.0);
        CHECK(evalkit::crafter_score(rates_from(bumped)) > base);
    }
}

TEST_CASE("success rates count episodes, not repeats") {
    using env::Achievement;
    std::vector<std::set<Achievement>> episodes{
        {Achievement::collect_wood, Achievement::collect_sapling},
        {Achievement::collect_wood},
        {},
        {Achievement::eat_cow}};
    const auto rates = evalkit::success_rates(episodes);
    CHECK(rates.size() == env::kAchievementCount);
    CHECK(rates.at(Achievement::collect_wood) == doctest::Approx(50.0));
    CHECK(rates.at(Achievement::collect_sapling) == doctest::Approx(25.0));
    CHECK(rates.at(Achievement::eat_cow) == doctest::Approx(25.0));
    CHECK(rates.at(Achievement::defeat_zombie) == doctest::Approx(0.0));
    CHECK_THROWS_AS(evalkit::success_rates({}), std::invalid_argument);

    // episode order is irrelevant
    std::reverse(episodes.begin(), episodes.end());
    CHECK(evalkit::success_rates(episodes) == rates);
}

TEST_CASE("evaluate is deterministic and reports a valid summary") {
    RunConfig config = parse_config_text("");
    config.env.size = 8;
    config.env.episode_cap = 40;
    config.embed.dimension = 16;
    config.ppo.hidden = 8;

    auto policy = rl::make_policy<float>(
        rl::feature_length(config.embed.dimension), config.ppo.hidden, 3);
    const auto report_a = evalkit::evaluate(config, policy, 5, 1000);
    const auto report_b = evalkit::evaluate(config, policy, 5, 1000);
    CHECK(report_a.episodes == 5);
    CHECK(report_a.episode_returns == report_b.episode_returns);
    CHECK(report_a.score == report_b.score);
    CHECK(report_a.score >= 0.0);
    CHECK(report_a.impossible_action_rate >= 0.0);
    CHECK(report_a.impossible_action_rate <= 1.0);
    CHECK(report_a.success_rates.size() == env::kAchievementCount);

    const auto report_c = evalkit::evaluate(config, policy, 5, 2000);
    CHECK(report_a.episode_returns != report_c.episode_returns);

    const auto path = fs::temp_directory_path() /
                      ("adarefiner-report-" + std::to_string(::getpid()) +
                       ".json");
    evalkit::write_eval_report(report_a, path);
    std::ifstream in(path);
    const auto parsed = nlohmann::json::parse(in);
    fs::remove(path);
    CHECK(parsed.at("episodes").get<int>() == 5);
    CHECK(parsed.at("success_rates").size() == env::kAchievementCount);
    CHECK(parsed.contains("score"));
    CHECK(parsed.contains("mean_reward"));
    CHECK(parsed.contains("impossible_action_rate"));
}

TEST_CASE("evaluate_checkpoint validates the fingerprint") {
    RunConfig config = parse_config_text("");
    config.env.size = 8;
    config.env.episode_cap = 30;
    config.embed.dimension = 16;
    config.ppo.hidden = 8;

    const auto dir = fs::temp_directory_path() /
                     ("adarefiner-evalckpt-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto policy = rl::make_policy<float>(
        rl::feature_length(config.embed.dimension), config.ppo.hidden, 3);
    rl::PolicyFingerprint fp;
    fp.input_dim = rl::feature_length(config.embed.dimension);
    fp.hidden = config.ppo.hidden;
    fp.embed_dim = config.embed.dimension;
    fp.actions = env::kActionCount;
    rl::save_checkpoint((dir / "net.ckpt").string(), policy, fp, 1);

    const auto report = evalkit::evaluate_checkpoint(dir / "net.ckpt",
                                                     config, 3);
    CHECK(report.episodes == 3);

    auto mismatched = config;
    mismatched.embed.dimension = 32;
    CHECK_THROWS_AS(
        evalkit::evaluate_checkpoint(dir / "net.ckpt", mismatched, 3),
        rl::CheckpointError);
    fs::remove_all(dir);
}

TEST_CASE("emit_curves derives plot data from run artifacts") {
    RunConfig config = parse_config_text("");
    config.env.size = 8;
    config.env.episode_cap = 40;
    config.embed.dimension = 16;
    config.ppo.hidden = 8;
    config.ppo.horizon = 32;
    config.loop.total_steps = 150;
    config.loop.seed = 3;
    config.loop.probs_log_interval = 50;

    const auto run_dir = fs::temp_directory_path() /
                         ("adarefiner-curves-" + std::to_string(::getpid()));
    fs::remove_all(run_dir);
    fs::create_directories(run_dir);
    loop::train(config, run_dir);

    const auto out_dir = run_dir / "plots";
    evalkit::emit_curves(run_dir, out_dir);
    for (const char* name :
         {"learning_curve.csv", "success_rates.csv",
          "comprehension_curve.csv", "policy_probs.csv"}) {
        CAPTURE(name);
        CHECK(fs::exists(out_dir / name));
    }

    std::ifstream rates(out_dir / "success_rates.csv");
    std::string header;
    std::getline(rates, header);
    CHECK(header == "achievement,rate,log10_rate");
    int rows = 0;
    std::string line;
    while (std::getline(rates, line)) {
        ++rows;
    }
    CHECK(rows == static_cast<int>(env::kAchievementCount));

    CHECK_THROWS_AS(evalkit::emit_curves(run_dir / "absent", out_dir),
                    std::runtime_error);
    fs::remove_all(run_dir);
}
