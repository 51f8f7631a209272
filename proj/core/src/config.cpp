#include "adarefiner/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace adarefiner {
namespace {

struct KeyBinding {
    std::string path;  // "section.key"
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

template <typename Int>
Int parse_int(const std::string& path, const std::string& value) {
    Int out{};
    const auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError(path + ": expected integer, got '" + value + "'");
    }
    return out;
}

double parse_double(const std::string& path, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return out;
    } catch (const std::exception&) {
        throw ConfigError(path + ": expected number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& path, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError(path + ": expected true/false, got '" + value + "'");
}

std::string render_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

llm::BackendKind parse_backend_kind(const std::string& path,
                                    const std::string& value) {
    if (value == "scripted") return llm::BackendKind::scripted;
    if (value == "http") return llm::BackendKind::http;
    throw ConfigError(path + ": expected scripted/http, got '" + value + "'");
}

std::vector<KeyBinding> schema() {
    std::vector<KeyBinding> keys;
    auto add_int = [&keys](std::string path, auto accessor) {
        keys.push_back(
            {path,
             [accessor, path](RunConfig& c, const std::string& v) {
                 using T = std::remove_reference_t<decltype(accessor(c))>;
                 accessor(c) = parse_int<T>(path, v);
             },
             [accessor](const RunConfig& c) {
                 return std::to_string(accessor(const_cast<RunConfig&>(c)));
             }});
    };
    auto add_double = [&keys](std::string path, auto accessor) {
        keys.push_back({path,
                        [accessor, path](RunConfig& c, const std::string& v) {
                            accessor(c) = parse_double(path, v);
                        },
                        [accessor](const RunConfig& c) {
                            return render_double(
                                accessor(const_cast<RunConfig&>(c)));
                        }});
    };
    auto add_bool = [&keys](std::string path, auto accessor) {
        keys.push_back({path,
                        [accessor, path](RunConfig& c, const std::string& v) {
                            accessor(c) = parse_bool(path, v);
                        },
                        [accessor](const RunConfig& c) {
                            return accessor(const_cast<RunConfig&>(c))
                                       ? "true"
                                       : "false";
                        }});
    };
    auto add_string = [&keys](std::string path, auto accessor) {
        keys.push_back({path,
                        [accessor](RunConfig& c, const std::string& v) {
                            accessor(c) = v;
                        },
                        [accessor](const RunConfig& c) {
                            return accessor(const_cast<RunConfig&>(c));
                        }});
    };
    auto add_backend = [&](const std::string& section,
                           llm::BackendSpec RunConfig::*member) {
        keys.push_back(
            {section + ".backend",
             [member, section](RunConfig& c, const std::string& v) {
                 (c.*member).kind = parse_backend_kind(section + ".backend", v);
             },
             [member](const RunConfig& c) {
                 return (c.*member).kind == llm::BackendKind::scripted
                            ? "scripted"
                            : "http";
             }});
        add_string(section + ".endpoint",
                   [member](RunConfig& c) -> std::string& {
                       return (c.*member).endpoint;
                   });
        add_string(section + ".model",
                   [member](RunConfig& c) -> std::string& {
                       return (c.*member).model_name;
                   });
        add_int(section + ".timeout_ms", [member](RunConfig& c) -> int& {
            return (c.*member).timeout_ms;
        });
        add_int(section + ".retry_budget", [member](RunConfig& c) -> int& {
            return (c.*member).retry_budget;
        });
        add_int(section + ".backoff_base_ms", [member](RunConfig& c) -> int& {
            return (c.*member).backoff_base_ms;
        });
    };

    add_int("env.size", [](RunConfig& c) -> int& { return c.env.size; });
    add_int("env.episode_cap",
            [](RunConfig& c) -> int& { return c.env.episode_cap; });
    add_int("env.day_length",
            [](RunConfig& c) -> int& { return c.env.day_length; });
    add_double("env.tree_density",
               [](RunConfig& c) -> double& { return c.env.tree_density; });
    add_double("env.coal_density",
               [](RunConfig& c) -> double& { return c.env.coal_density; });
    add_double("env.iron_density",
               [](RunConfig& c) -> double& { return c.env.iron_density; });
    add_double("env.diamond_density",
               [](RunConfig& c) -> double& { return c.env.diamond_density; });
    add_double("env.lava_density",
               [](RunConfig& c) -> double& { return c.env.lava_density; });
    add_double("env.cow_density",
               [](RunConfig& c) -> double& { return c.env.cow_density; });
    add_int("env.food_decay_ticks",
            [](RunConfig& c) -> int& { return c.env.food_decay_ticks; });
    add_int("env.drink_decay_ticks",
            [](RunConfig& c) -> int& { return c.env.drink_decay_ticks; });
    add_int("env.energy_decay_ticks",
            [](RunConfig& c) -> int& { return c.env.energy_decay_ticks; });
    add_int("env.starve_ticks",
            [](RunConfig& c) -> int& { return c.env.starve_ticks; });
    add_int("env.regen_ticks",
            [](RunConfig& c) -> int& { return c.env.regen_ticks; });
    add_int("env.cow_food",
            [](RunConfig& c) -> int& { return c.env.cow_food; });
    add_double("env.zombie_spawn_chance", [](RunConfig& c) -> double& {
        return c.env.zombie_spawn_chance;
    });
    add_double("env.skeleton_spawn_chance", [](RunConfig& c) -> double& {
        return c.env.skeleton_spawn_chance;
    });

    add_int("embed.dimension",
            [](RunConfig& c) -> int& { return c.embed.dimension; });
    add_bool("embed.signed",
             [](RunConfig& c) -> bool& { return c.embed.signed_hash; });

    add_bool("score.binary",
             [](RunConfig& c) -> bool& { return c.score.binary; });

    add_backend("llm.adapter", &RunConfig::adapter);
    add_backend("llm.decision", &RunConfig::decision);

    add_int("sft.n_sft", [](RunConfig& c) -> int& { return c.sft.n_sft; });
    add_int("sft.capacity",
            [](RunConfig& c) -> int& { return c.sft.capacity; });
    add_string("sft.hook_url",
               [](RunConfig& c) -> std::string& { return c.sft.hook_url; });

    add_double("ppo.learning_rate",
               [](RunConfig& c) -> double& { return c.ppo.learning_rate; });
    add_int("ppo.update_epochs",
            [](RunConfig& c) -> int& { return c.ppo.update_epochs; });
    add_double("ppo.gamma",
               [](RunConfig& c) -> double& { return c.ppo.gamma; });
    add_double("ppo.adam_epsilon",
               [](RunConfig& c) -> double& { return c.ppo.adam_epsilon; });
    add_double("ppo.clip_ratio",
               [](RunConfig& c) -> double& { return c.ppo.clip_ratio; });
    add_double("ppo.gae_lambda",
               [](RunConfig& c) -> double& { return c.ppo.gae_lambda; });
    add_double("ppo.entropy_coef",
               [](RunConfig& c) -> double& { return c.ppo.entropy_coef; });
    add_double("ppo.value_coef",
               [](RunConfig& c) -> double& { return c.ppo.value_coef; });
    add_int("ppo.horizon", [](RunConfig& c) -> int& { return c.ppo.horizon; });
    add_int("ppo.minibatches",
            [](RunConfig& c) -> int& { return c.ppo.minibatch_count; });
    add_int("ppo.hidden", [](RunConfig& c) -> int& { return c.ppo.hidden; });

    add_int("loop.seed",
            [](RunConfig& c) -> std::uint64_t& { return c.loop.seed; });
    add_int("loop.total_steps",
            [](RunConfig& c) -> std::int64_t& { return c.loop.total_steps; });
    add_int("loop.n_gen", [](RunConfig& c) -> int& { return c.loop.n_gen; });
    add_int("loop.buffer_capacity",
            [](RunConfig& c) -> int& { return c.loop.buffer_capacity; });
    add_int("loop.prompt_actions",
            [](RunConfig& c) -> int& { return c.loop.prompt_actions; });
    add_int("loop.prompt_goals",
            [](RunConfig& c) -> int& { return c.loop.prompt_goals; });
    add_int("loop.probs_log_interval",
            [](RunConfig& c) -> int& { return c.loop.probs_log_interval; });
    add_bool("loop.no_l_score",
             [](RunConfig& c) -> bool& { return c.loop.no_l_score; });
    add_bool("loop.no_adapter",
             [](RunConfig& c) -> bool& { return c.loop.no_adapter; });
    add_bool("loop.binary_score",
             [](RunConfig& c) -> bool& { return c.loop.binary_score; });
    add_bool("loop.no_llm",
             [](RunConfig& c) -> bool& { return c.loop.no_llm; });

    add_int("eval.episodes",
            [](RunConfig& c) -> int& { return c.eval.episodes; });
    add_bool("eval.argmax",
             [](RunConfig& c) -> bool& { return c.eval.argmax; });

    return keys;
}

const std::vector<KeyBinding>& bindings() {
    static const std::vector<KeyBinding> keys = schema();
    return keys;
}

const KeyBinding* find_binding(const std::string& path) {
    for (const auto& b : bindings()) {
        if (b.path == path) {
            return &b;
        }
    }
    return nullptr;
}

void validate(const RunConfig& c) {
    auto require = [](bool ok, const std::string& message) {
        if (!ok) {
            throw ConfigError(message);
        }
    };
    require(c.env.size >= 8, "env.size: must be >= 8");
    require(c.env.episode_cap >= 1, "env.episode_cap: must be >= 1");
    require(c.embed.dimension >= 1, "embed.dimension: must be >= 1");
    require(c.sft.n_sft >= 1, "sft.n_sft: must be >= 1");
    require(c.loop.n_gen >= 1, "loop.n_gen: must be >= 1");
    require(c.loop.total_steps >= 1, "loop.total_steps: must be >= 1");
    require(c.ppo.horizon >= 1, "ppo.horizon: must be >= 1");
    require(c.ppo.minibatch_count >= 1, "ppo.minibatches: must be >= 1");
    require(c.ppo.hidden >= 1, "ppo.hidden: must be >= 1");
    require(c.eval.episodes >= 1, "eval.episodes: must be >= 1");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty() || key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": key outside any section");
        }
        apply_override(config, section + "." + key, value);
    }
    validate(config);
    return config;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file: " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

void apply_override(RunConfig& config, const std::string& key_path,
                    const std::string& value) {
    const KeyBinding* binding = find_binding(key_path);
    if (binding == nullptr) {
        throw ConfigError("unknown config key: " + key_path);
    }
    binding->set(config, value);
}

std::string render_config(const RunConfig& config) {
    std::string out;
    std::string section;
    for (const auto& b : bindings()) {
        const auto dot = b.path.rfind('.');
        const std::string key_section = b.path.substr(0, dot);
        const std::string key = b.path.substr(dot + 1);
        if (key_section != section) {
            if (!out.empty()) {
                out += "\n";
            }
            out += "[" + key_section + "]\n";
            section = key_section;
        }
        out += key + " = " + b.get(config) + "\n";
    }
    return out;
}

}  // namespace adarefiner
