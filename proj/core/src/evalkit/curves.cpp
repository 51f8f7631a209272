#include "adarefiner/evalkit/curves.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "adarefiner/craftworld/types.hpp"

namespace adarefiner::evalkit {
namespace {

namespace fs = std::filesystem;

constexpr int kEpisodeWindow = 100;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("missing run artifact: " + path.string());
    }
    return in;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write: " + path.string());
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

// Trailing-window mean tracker.
class Window {
public:
    void push(double v) {
        values_.push_back(v);
        sum_ += v;
        if (values_.size() > kEpisodeWindow) {
            sum_ -= values_.front();
            values_.pop_front();
        }
    }
    double mean() const {
        return values_.empty() ? 0.0 : sum_ / values_.size();
    }

private:
    std::deque<double> values_;
    double sum_ = 0.0;
};

}  // namespace

void emit_curves(const fs::path& run_dir, const fs::path& out_dir) {
    fs::create_directories(out_dir);

    // episodes.csv -> learning curve and success rates
    {
        std::ifstream in = open_in(run_dir / "episodes.csv");
        std::ofstream curve = open_out(out_dir / "learning_curve.csv");
        curve << "step,mean_return\n";
        std::string line;
        std::getline(in, line);  // header
        Window returns;
        std::int64_t episodes = 0;
        std::vector<std::int64_t> completing(env::kAchievementCount, 0);
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            const auto fields = split_csv(line);
            if (fields.size() < 5) {
                throw std::runtime_error("malformed episodes.csv row: " + line);
            }
            returns.push(std::stod(fields[3]));
            curve << fields[1] << "," << fmt(returns.mean()) << "\n";
            ++episodes;
            if (fields.size() >= 6) {
                std::istringstream names(fields[5]);
                std::string name;
                while (std::getline(names, name, '|')) {
                    if (auto a = env::achievement_from_name(name)) {
                        ++completing[static_cast<int>(*a)];
                    }
                }
            }
        }

        std::ofstream rates = open_out(out_dir / "success_rates.csv");
        rates << "achievement,rate,log10_rate\n";
        for (int i = 0; i < env::kAchievementCount; ++i) {
            const double rate =
                episodes > 0 ? 100.0 * completing[i] / episodes : 0.0;
            rates << env::achievement_name(static_cast<env::Achievement>(i))
                  << "," << fmt(rate) << "," << fmt(std::log10(1.0 + rate))
                  << "\n";
        }
    }

    // steps.csv -> per-episode mean comprehension score
    {
        std::ifstream in = open_in(run_dir / "steps.csv");
        std::ofstream curve = open_out(out_dir / "comprehension_curve.csv");
        curve << "step,mean_l\n";
        std::string line;
        std::getline(in, line);  // header
        Window scores;
        double episode_l = 0.0;
        std::int64_t episode_steps = 0;
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            const auto fields = split_csv(line);
            if (fields.size() < 9) {
                throw std::runtime_error("malformed steps.csv row: " + line);
            }
            episode_l += std::stod(fields[3]);
            ++episode_steps;
            if (fields[8] == "1") {
                scores.push(episode_l / episode_steps);
                curve << fields[0] << "," << fmt(scores.mean()) << "\n";
                episode_l = 0.0;
                episode_steps = 0;
            }
        }
    }

    // probs.csv passes through under its plot-facing name.
    {
        std::ifstream in = open_in(run_dir / "probs.csv");
        std::ofstream out = open_out(out_dir / "policy_probs.csv");
        out << in.rdbuf();
    }
}

}  // namespace adarefiner::evalkit
