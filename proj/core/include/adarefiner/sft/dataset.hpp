#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <string>
#include <vector>

#include "adarefiner/gateway/backend.hpp"
#include "adarefiner/gateway/prompts.hpp"

namespace adarefiner::sft {

struct SftPair {
    std::string prompt;      // adapter prompt rebuilt with the fresh score
    std::string completion;  // the summary that was actually emitted
    std::int64_t step = 0;
    double l_value = 0.0;

    bool operator==(const SftPair&) const = default;
};

// Append-only during training, FIFO-capped.
class SftDataset {
public:
    explicit SftDataset(std::size_t capacity = 50000) : capacity_(capacity) {}

    void append(SftPair pair);
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    const std::deque<SftPair>& pairs() const { return pairs_; }

    // l values of the most recent `count` pairs, oldest first.
    std::vector<double> recent_scores(std::size_t count) const;

private:
    std::deque<SftPair> pairs_;
    std::size_t capacity_;
};

// Appends <prompt_a(context, l_new), completion>; the score line is omitted
// from the recorded prompt under the no-l-score ablation.
void record_sft_pair(SftDataset& dataset, const llm::PromptContext& context,
                     double l_new, const std::string& completion,
                     std::int64_t step, bool include_score = true);

// One JSON object per pair: {"prompt", "completion", "step", "l"}.
void export_sft_jsonl(const SftDataset& dataset,
                      const std::filesystem::path& path);

std::vector<SftPair> parse_sft_jsonl(const std::filesystem::path& path);

enum class FinetuneOutcome { triggered, skipped };

struct FinetuneOptions {
    std::string hook_url;       // optional HTTP callback
    std::string snapshot_dir;   // where sft-{step}.jsonl snapshots land
    int hook_timeout_ms = 5000;
};

// Fires when t is a positive multiple of n_sft and the dataset is non-empty.
// Scripted backends refresh their summary thresholds from the last 100
// pairs; http-backed setups export a snapshot and invoke the hook URL.
// Hook failures are logged to stderr and never abort training.
FinetuneOutcome maybe_finetune(std::int64_t t, int n_sft,
                               llm::CompletionBackend* adapter,
                               const SftDataset& dataset,
                               const FinetuneOptions& options = {});

}  // namespace adarefiner::sft
