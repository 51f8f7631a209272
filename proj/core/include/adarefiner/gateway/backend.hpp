#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "adarefiner/craftworld/types.hpp"
#include "adarefiner/gateway/prompts.hpp"

namespace adarefiner::llm {

enum class BackendKind { scripted, http };
enum class Role { adapter, decision };

struct BackendSpec {
    BackendKind kind = BackendKind::scripted;
    std::string endpoint;    // http only, e.g. "http://localhost:8080"
    std::string model_name;  // http only
    int timeout_ms = 10000;
    int retry_budget = 3;
    int backoff_base_ms = 1000;  // doubles per retry
};

class TransportError : public std::runtime_error {
public:
    TransportError(const std::string& what, int attempts)
        : std::runtime_error(what), attempts(attempts) {}
    int attempts;
};

class ProtocolError : public std::runtime_error {
public:
    ProtocolError(const std::string& what, int status)
        : std::runtime_error(what), status(status) {}
    int status;
};

class CompletionBackend {
public:
    virtual ~CompletionBackend() = default;
    virtual std::string complete(const PromptBundle& prompt,
                                 std::uint64_t seed) = 0;
};

// Game facts the scripted oracle grounds its completions in; set by the
// orchestrator before each generation step.
struct OracleSnapshot {
    std::set<env::Achievement> unlocked;
    env::PlayerStatus status;
    bool cow_visible = false;
    double comprehension = 0.0;
};

// Deterministic stand-in for a hosted model. The decision role suggests the
// three lowest-depth achievements whose prerequisites are met; the adapter
// role summarizes the comprehension band, the next achievable task and the
// weakest stat.
class ScriptedBackend : public CompletionBackend {
public:
    explicit ScriptedBackend(Role role) : role_(role) {}

    void set_snapshot(OracleSnapshot snapshot) { snapshot_ = std::move(snapshot); }

    // SFT refresh hook: recomputes the band thresholds from the score
    // distribution of recent pairs.
    void refresh_thresholds(const std::vector<double>& recent_scores);

    double low_threshold() const { return low_; }
    double high_threshold() const { return high_; }

    std::string complete(const PromptBundle& prompt,
                         std::uint64_t seed) override;

private:
    Role role_;
    OracleSnapshot snapshot_;
    double low_ = 0.2;
    double high_ = 0.6;
};

// OpenAI-compatible chat-completions client. Sends
// POST {endpoint}/v1/chat/completions; bearer token comes from the
// ADAREFINER_API_KEY environment variable when present.
class HttpBackend : public CompletionBackend {
public:
    explicit HttpBackend(BackendSpec spec) : spec_(std::move(spec)) {}

    std::string complete(const PromptBundle& prompt,
                         std::uint64_t seed) override;

private:
    BackendSpec spec_;
};

std::unique_ptr<CompletionBackend> make_backend(const BackendSpec& spec,
                                                Role role);

}  // namespace adarefiner::llm
