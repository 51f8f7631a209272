#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "adarefiner/craftworld/tech_tree.hpp"
#include "adarefiner/gateway/backend.hpp"

using namespace adarefiner;

namespace {

llm::PromptBundle dummy_prompt() {
    return {"system", "user", {}};
}

llm::OracleSnapshot fresh_snapshot() {
    llm::OracleSnapshot snap;
    snap.status = {9, 9, 9, 9};
    return snap;
}

// Serves canned chat completions on a local port for client tests.
class FakeServer {
public:
    explicit FakeServer(int status, std::string body)
        : status_(status), body_(std::move(body)) {
        server_.Post("/v1/chat/completions",
                     [this](const httplib::Request& req,
                            httplib::Response& res) {
                         ++hits_;
                         last_auth_ = req.get_header_value("Authorization");
                         last_body_ = req.body;
                         res.status = status_;
                         res.set_content(body_, "application/json");
                     });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~FakeServer() {
        server_.stop();
        thread_.join();
    }

    std::string endpoint() const {
        return "http://127.0.0.1:" + std::to_string(port_);
    }
    int hits() const { return hits_; }
    std::string last_auth() const { return last_auth_; }
    std::string last_body() const { return last_body_; }

private:
    int status_;
    std::string body_;
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
    std::atomic<int> hits_{0};
    std::string last_auth_;
    std::string last_body_;
};

llm::BackendSpec http_spec(const std::string& endpoint) {
    llm::BackendSpec spec;
    spec.kind = llm::BackendKind::http;
    spec.endpoint = endpoint;
    spec.model_name = "test-model";
    spec.timeout_ms = 2000;
    spec.retry_budget = 3;
    spec.backoff_base_ms = 1;  // keep tests fast
    return spec;
}

}  // namespace

TEST_CASE("scripted decision suggests the three shallowest open tasks") {
    llm::ScriptedBackend backend(llm::Role::decision);
    backend.set_snapshot(fresh_snapshot());
    const std::string out = backend.complete(dummy_prompt(), 1);
    // all depth-1 achievements, lowercased, comma-joined
    CHECK(out.find("collect") != std::string::npos);
    CHECK(std::count(out.begin(), out.end(), ',') == 2);

    // deterministic per (snapshot, prompt, seed)
    CHECK(backend.complete(dummy_prompt(), 1) == out);
}

TEST_CASE("scripted decision prioritizes a visible cow when hungry") {
    llm::ScriptedBackend backend(llm::Role::decision);
    auto snap = fresh_snapshot();
    snap.cow_visible = true;
    snap.status.food = 4;
    backend.set_snapshot(snap);
    CHECK(backend.complete(dummy_prompt(), 1) ==
          "find cow, move to cow, eat cow");

    snap.status.food = 9;  // well fed: back to the tech tree
    backend.set_snapshot(snap);
    CHECK(backend.complete(dummy_prompt(), 1) !=
          "find cow, move to cow, eat cow");
}

TEST_CASE("scripted decision advances with the unlocked set") {
    llm::ScriptedBackend backend(llm::Role::decision);
    auto snap = fresh_snapshot();
    snap.unlocked = {env::Achievement::collect_wood};
    backend.set_snapshot(snap);
    // collect wood is done, so it drops out of the suggestions
    CHECK(backend.complete(dummy_prompt(), 1).find("collect wood") ==
          std::string::npos);

    // with every leaf unlocked, the depth-2 frontier surfaces
    for (int i = 0; i < env::kAchievementCount; ++i) {
        const auto a = static_cast<env::Achievement>(i);
        if (env::achievement_depth(a) == 1) {
            snap.unlocked.insert(a);
        }
    }
    backend.set_snapshot(snap);
    CHECK(backend.complete(dummy_prompt(), 1).find("place table") !=
          std::string::npos);
}

TEST_CASE("scripted adapter reports the comprehension band") {
    llm::ScriptedBackend backend(llm::Role::adapter);
    auto snap = fresh_snapshot();

    snap.comprehension = 0.05;
    backend.set_snapshot(snap);
    CHECK(backend.complete(dummy_prompt(), 1).find("struggling") !=
          std::string::npos);

    snap.comprehension = 0.4;
    backend.set_snapshot(snap);
    CHECK(backend.complete(dummy_prompt(), 1).find("progressing") !=
          std::string::npos);

    snap.comprehension = 0.9;
    backend.set_snapshot(snap);
    CHECK(backend.complete(dummy_prompt(), 1).find("proficient") !=
          std::string::npos);
}

TEST_CASE("threshold refresh follows the recent score distribution") {
    llm::ScriptedBackend backend(llm::Role::adapter);
    CHECK(backend.low_threshold() == 0.2);
    CHECK(backend.high_threshold() == 0.6);

    std::vector<double> scores;
    for (int i = 0; i < 99; ++i) {
        scores.push_back(i / 99.0);
    }
    backend.refresh_thresholds(scores);
    CHECK(backend.low_threshold() == doctest::Approx(1.0 / 3.0).epsilon(0.05));
    CHECK(backend.high_threshold() == doctest::Approx(2.0 / 3.0).epsilon(0.05));
    CHECK(backend.low_threshold() < backend.high_threshold());

    backend.refresh_thresholds({});  // no-op on empty history
    CHECK(backend.low_threshold() > 0.0);
}

TEST_CASE("http backend round-trips an openai-style completion") {
    nlohmann::json reply;
    reply["choices"] = {{{"message", {{"content", "eat cow, sleep, drink"}}}}};
    FakeServer server(200, reply.dump());

    setenv("ADAREFINER_API_KEY", "secret-key", 1);
    llm::HttpBackend backend(http_spec(server.endpoint()));
    const auto prompt = dummy_prompt();
    CHECK(backend.complete(prompt, 3) == "eat cow, sleep, drink");
    unsetenv("ADAREFINER_API_KEY");

    CHECK(server.hits() == 1);
    CHECK(server.last_auth() == "Bearer secret-key");
    const auto body = nlohmann::json::parse(server.last_body());
    CHECK(body.at("model") == "test-model");
    CHECK(body.at("messages").size() == 2);
    CHECK(body.at("messages")[0].at("role") == "system");
    CHECK(body.at("temperature") == 0.5);
    CHECK(body.at("max_tokens") == 100);
}

TEST_CASE("non-2xx responses raise protocol errors without retries") {
    FakeServer server(500, "{}");
    llm::HttpBackend backend(http_spec(server.endpoint()));
    CHECK_THROWS_AS(backend.complete(dummy_prompt(), 1), llm::ProtocolError);
    CHECK(server.hits() == 1);
}

TEST_CASE("malformed payloads raise protocol errors") {
    FakeServer server(200, "not json at all");
    llm::HttpBackend backend(http_spec(server.endpoint()));
    CHECK_THROWS_AS(backend.complete(dummy_prompt(), 1), llm::ProtocolError);
}

TEST_CASE("unreachable endpoints exhaust the retry budget") {
    // nothing listens on this port
    llm::HttpBackend backend(http_spec("http://127.0.0.1:1"));
    try {
        backend.complete(dummy_prompt(), 1);
        FAIL("expected TransportError");
    } catch (const llm::TransportError& e) {
        CHECK(e.attempts == 3);
    }
}

TEST_CASE("factory selects the backend kind") {
    llm::BackendSpec scripted;
    CHECK(dynamic_cast<llm::ScriptedBackend*>(
              llm::make_backend(scripted, llm::Role::adapter).get()) !=
          nullptr);
    auto spec = http_spec("http://127.0.0.1:1");
    CHECK(dynamic_cast<llm::HttpBackend*>(
              llm::make_backend(spec, llm::Role::decision).get()) != nullptr);
}
