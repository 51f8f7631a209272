#include "adarefiner/sft/dataset.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

namespace adarefiner::sft {

void SftDataset::append(SftPair pair) {
    if (capacity_ > 0 && pairs_.size() >= capacity_) {
        pairs_.pop_front();
    }
    pairs_.push_back(std::move(pair));
}

std::vector<double> SftDataset::recent_scores(std::size_t count) const {
    const std::size_t n = std::min(count, pairs_.size());
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = pairs_.size() - n; i < pairs_.size(); ++i) {
        out.push_back(pairs_[i].l_value);
    }
    return out;
}

void record_sft_pair(SftDataset& dataset, const llm::PromptContext& context,
                     double l_new, const std::string& completion,
                     std::int64_t step, bool include_score) {
    if (completion.empty()) {
        throw std::invalid_argument("sft pair requires a non-empty completion");
    }
    const auto prompt = llm::build_adapter_prompt(context, l_new, include_score);
    dataset.append({prompt.user, completion, step, l_new});
}

void export_sft_jsonl(const SftDataset& dataset,
                      const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open sft export file: " +
                                 path.string());
    }
    for (const auto& pair : dataset.pairs()) {
        nlohmann::json line;
        line["prompt"] = pair.prompt;
        line["completion"] = pair.completion;
        line["step"] = pair.step;
        line["l"] = pair.l_value;
        out << line.dump() << '\n';
    }
    if (!out) {
        throw std::runtime_error("write failed on sft export file: " +
                                 path.string());
    }
}

std::vector<SftPair> parse_sft_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open sft file: " + path.string());
    }
    std::vector<SftPair> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto parsed = nlohmann::json::parse(line);
        out.push_back({parsed.at("prompt").get<std::string>(),
                       parsed.at("completion").get<std::string>(),
                       parsed.at("step").get<std::int64_t>(),
                       parsed.at("l").get<double>()});
    }
    return out;
}

FinetuneOutcome maybe_finetune(std::int64_t t, int n_sft,
                               llm::CompletionBackend* adapter,
                               const SftDataset& dataset,
                               const FinetuneOptions& options) {
    if (n_sft <= 0) {
        throw std::invalid_argument("n_sft must be positive");
    }
    if (t <= 0 || t % n_sft != 0 || dataset.empty()) {
        return FinetuneOutcome::skipped;
    }

    if (auto* scripted = dynamic_cast<llm::ScriptedBackend*>(adapter)) {
        scripted->refresh_thresholds(dataset.recent_scores(100));
        return FinetuneOutcome::triggered;
    }

    if (!options.snapshot_dir.empty()) {
        const auto snapshot = std::filesystem::path(options.snapshot_dir) /
                              ("sft-" + std::to_string(t) + ".jsonl");
        export_sft_jsonl(dataset, snapshot);
        if (!options.hook_url.empty()) {
            try {
                httplib::Client client(options.hook_url);
                client.set_connection_timeout(0, options.hook_timeout_ms * 1000);
                nlohmann::json body{{"step", t},
                                    {"pairs", dataset.size()},
                                    {"snapshot", snapshot.string()}};
                auto res = client.Post("/", body.dump(), "application/json");
                if (!res || res->status < 200 || res->status >= 300) {
                    std::cerr << "fine-tune hook failed at step " << t
                              << " (continuing)\n";
                }
            } catch (const std::exception& e) {
                std::cerr << "fine-tune hook error at step " << t << ": "
                          << e.what() << " (continuing)\n";
            }
        }
    }
    return FinetuneOutcome::triggered;
}

}  // namespace adarefiner::sft
