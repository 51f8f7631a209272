#include "adarefiner/policy/checkpoint.hpp"

#include <array>
#include <fstream>
#include <functional>
#include <vector>

#include <json.hpp>

namespace adarefiner::rl {
namespace {

constexpr char kMagic[8] = {'A', 'D', 'R', 'F', 'C', 'K', 'P', 'T'};
constexpr std::uint16_t kVersion = 1;

// Type-erased view over a weight matrix or bias vector.
struct NamedArray {
    std::string name;
    std::function<Eigen::Index()> rows;
    std::function<Eigen::Index()> cols;
    std::function<float*()> data;
    std::function<void(Eigen::Index, Eigen::Index)> resize;
};

template <typename Mat>
NamedArray view(std::string name, Mat& m) {
    return {std::move(name),
            [&m] { return m.rows(); },
            [&m] { return m.cols(); },
            [&m] { return m.data(); },
            [&m](Eigen::Index r, Eigen::Index c) {
                if constexpr (Mat::ColsAtCompileTime == 1) {
                    if (c != 1) {
                        throw CheckpointError(
                            "bias array must have a single column");
                    }
                    m.resize(r);
                } else {
                    m.resize(r, c);
                }
            }};
}

std::vector<NamedArray> array_list(PolicyParams& params) {
    std::vector<NamedArray> out;
    auto add = [&out](const char* prefix, Mlp<float>& net) {
        const std::string p(prefix);
        out.push_back(view(p + ".w1", net.w1));
        out.push_back(view(p + ".b1", net.b1));
        out.push_back(view(p + ".w2", net.w2));
        out.push_back(view(p + ".b2", net.b2));
        out.push_back(view(p + ".w3", net.w3));
        out.push_back(view(p + ".b3", net.b3));
    };
    add("actor", params.actor);
    add("critic", params.critic);
    return out;
}

template <typename T>
void write_le(std::ostream& out, T value) {
    std::array<unsigned char, sizeof(T)> bytes{};
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bytes[i] = static_cast<unsigned char>(
            (static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T read_le(std::istream& in, const char* field) {
    std::array<unsigned char, sizeof(T)> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
        throw CheckpointError(std::string("truncated checkpoint reading ") +
                              field);
    }
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        value |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    }
    return static_cast<T>(value);
}

}  // namespace

void save_checkpoint(const std::string& path, const PolicyParams& params,
                     const PolicyFingerprint& fingerprint, std::int64_t step) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CheckpointError("cannot open checkpoint for writing: " + path);
    }

    auto arrays = array_list(const_cast<PolicyParams&>(params));
    nlohmann::json header;
    header["step"] = step;
    header["fingerprint"] = {{"input_dim", fingerprint.input_dim},
                             {"hidden", fingerprint.hidden},
                             {"embed_dim", fingerprint.embed_dim},
                             {"actions", fingerprint.actions}};
    nlohmann::json shapes = nlohmann::json::array();
    for (const auto& a : arrays) {
        shapes.push_back(
            {{"name", a.name}, {"rows", a.rows()}, {"cols", a.cols()}});
    }
    header["shapes"] = shapes;
    const std::string header_bytes = header.dump();

    out.write(kMagic, sizeof(kMagic));
    write_le<std::uint16_t>(out, kVersion);
    write_le<std::uint32_t>(out, static_cast<std::uint32_t>(header_bytes.size()));
    out.write(header_bytes.data(),
              static_cast<std::streamsize>(header_bytes.size()));
    // float32 payload, little-endian, column-major, in the header's order
    static_assert(sizeof(float) == 4);
    for (const auto& a : arrays) {
        out.write(reinterpret_cast<const char*>(a.data()),
                  static_cast<std::streamsize>(a.rows() * a.cols() * 4));
    }
    if (!out) {
        throw CheckpointError("write failure on checkpoint: " + path);
    }
}

std::int64_t load_checkpoint(const std::string& path, PolicyParams& params,
                             const PolicyFingerprint& expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CheckpointError("cannot open checkpoint: " + path);
    }

    char magic[8];
    if (!in.read(magic, sizeof(magic))) {
        throw CheckpointError("truncated checkpoint reading magic");
    }
    if (!std::equal(magic, magic + 8, kMagic)) {
        throw CheckpointError("bad checkpoint magic");
    }
    const auto version = read_le<std::uint16_t>(in, "version");
    if (version != kVersion) {
        throw CheckpointError("unsupported checkpoint version " +
                              std::to_string(version));
    }
    const auto header_length = read_le<std::uint32_t>(in, "header length");
    std::string header_bytes(header_length, '\0');
    if (!in.read(header_bytes.data(), header_length)) {
        throw CheckpointError("truncated checkpoint reading header");
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(header_bytes);
    } catch (const nlohmann::json::exception& e) {
        throw CheckpointError(std::string("malformed checkpoint header: ") +
                              e.what());
    }

    PolicyFingerprint stored;
    try {
        const auto& fp = header.at("fingerprint");
        stored.input_dim = fp.at("input_dim").get<int>();
        stored.hidden = fp.at("hidden").get<int>();
        stored.embed_dim = fp.at("embed_dim").get<int>();
        stored.actions = fp.at("actions").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw CheckpointError(std::string("checkpoint header missing field: ") +
                              e.what());
    }
    if (!(stored == expected)) {
        throw CheckpointError("checkpoint fingerprint mismatch");
    }

    auto arrays = array_list(params);
    const auto& shapes = header.at("shapes");
    if (!shapes.is_array() || shapes.size() != arrays.size()) {
        throw CheckpointError("checkpoint header has wrong array count");
    }
    std::int64_t step = header.at("step").get<std::int64_t>();
    for (std::size_t i = 0; i < arrays.size(); ++i) {
        const auto& s = shapes[i];
        if (s.at("name").get<std::string>() != arrays[i].name) {
            throw CheckpointError("unexpected array " +
                                  s.at("name").get<std::string>() +
                                  ", wanted " + arrays[i].name);
        }
        const auto rows = s.at("rows").get<Eigen::Index>();
        const auto cols = s.at("cols").get<Eigen::Index>();
        arrays[i].resize(rows, cols);
        if (!in.read(reinterpret_cast<char*>(arrays[i].data()),
                     static_cast<std::streamsize>(rows * cols * 4))) {
            throw CheckpointError("truncated checkpoint reading " +
                                  arrays[i].name);
        }
    }
    return step;
}

}  // namespace adarefiner::rl
