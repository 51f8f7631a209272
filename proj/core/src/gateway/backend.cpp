#include "adarefiner/gateway/backend.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "adarefiner/craftworld/tech_tree.hpp"

namespace adarefiner::llm {

namespace {

std::string lowercase(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        out.push_back(
            static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

std::string goal_phrase(env::Achievement a) {
    return lowercase(env::achievement_name(a));
}

const char* weakest_stat(const env::PlayerStatus& status) {
    if (status.food <= status.drink && status.food <= status.energy) {
        return "food";
    }
    if (status.drink <= status.energy) {
        return "drink";
    }
    return "energy";
}

}  // namespace

void ScriptedBackend::refresh_thresholds(
    const std::vector<double>& recent_scores) {
    if (recent_scores.empty()) {
        return;
    }
    std::vector<double> sorted = recent_scores;
    std::ranges::sort(sorted);
    auto quantile = [&sorted](double q) {
        const auto idx = static_cast<std::size_t>(
            q * static_cast<double>(sorted.size() - 1));
        return sorted[idx];
    };
    low_ = std::clamp(quantile(1.0 / 3.0), 0.0, 1.0);
    high_ = std::clamp(quantile(2.0 / 3.0), low_ + 1e-6, 1.0);
}

std::string ScriptedBackend::complete(const PromptBundle& prompt,
                                      std::uint64_t seed) {
    (void)prompt;
    (void)seed;
    const auto next = env::achievable_next(snapshot_.unlocked);

    if (role_ == Role::decision) {
        if (snapshot_.cow_visible && snapshot_.status.food <= 5) {
            return "find cow, move to cow, eat cow";
        }
        std::vector<std::string> goals;
        for (env::Achievement a : next) {
            goals.push_back(goal_phrase(a));
            if (goals.size() == 3) {
                break;
            }
        }
        if (goals.empty()) {
            return "collect wood, collect drink, collect sapling";
        }
        const std::size_t distinct = goals.size();
        while (goals.size() < 3) {
            goals.push_back(goals[goals.size() % distinct]);
        }
        return goals[0] + ", " + goals[1] + ", " + goals[2];
    }

    const double l = snapshot_.comprehension;
    const char* band = l < low_      ? "struggling"
                       : l <= high_ ? "progressing"
                                    : "proficient";
    const std::string task =
        next.empty() ? std::string("collect wood") : goal_phrase(next.front());
    return std::string("The player is ") + band +
           " with the current guidance. The next achievable task is " + task +
           ". The weakest stat is " + weakest_stat(snapshot_.status) + ".";
}

std::string HttpBackend::complete(const PromptBundle& prompt,
                                  std::uint64_t seed) {
    (void)seed;
    nlohmann::json body;
    body["model"] = spec_.model_name;
    body["messages"] = nlohmann::json::array(
        {{{"role", "system"}, {"content", prompt.system}},
         {{"role", "user"}, {"content", prompt.user}}});
    body["temperature"] = prompt.params.temperature;
    body["top_p"] = prompt.params.top_p;
    body["max_tokens"] = prompt.params.max_tokens;
    const std::string payload = body.dump();

    httplib::Client client(spec_.endpoint);
    client.set_connection_timeout(0, spec_.timeout_ms * 1000);
    client.set_read_timeout(spec_.timeout_ms / 1000,
                            (spec_.timeout_ms % 1000) * 1000);
    httplib::Headers headers;
    if (const char* key = std::getenv("ADAREFINER_API_KEY")) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    int attempts = 0;
    for (int attempt = 0; attempt < spec_.retry_budget; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(
                spec_.backoff_base_ms << (attempt - 1)));
        }
        ++attempts;
        auto res = client.Post("/v1/chat/completions", headers, payload,
                               "application/json");
        if (!res) {
            continue;  // transport failure; retry
        }
        if (res->status < 200 || res->status >= 300) {
            throw ProtocolError("chat completion failed with HTTP status " +
                                    std::to_string(res->status),
                                res->status);
        }
        try {
            const auto parsed = nlohmann::json::parse(res->body);
            return parsed.at("choices").at(0).at("message").at("content")
                .get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw ProtocolError(
                std::string("malformed chat completion response: ") + e.what(),
                res->status);
        }
    }
    throw TransportError("chat completion unreachable after " +
                             std::to_string(attempts) + " attempts: " +
                             spec_.endpoint,
                         attempts);
}

std::unique_ptr<CompletionBackend> make_backend(const BackendSpec& spec,
                                                Role role) {
    if (spec.kind == BackendKind::scripted) {
        return std::make_unique<ScriptedBackend>(role);
    }
    return std::make_unique<HttpBackend>(spec);
}

}  // namespace adarefiner::llm
