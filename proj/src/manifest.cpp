#include "fdhom/manifest.hpp"

#include <fstream>
#include <sstream>

#include "fdhom/errors.hpp"

namespace fdhom {

nlohmann::json RunManifest::to_json() const {
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& [path, digest] : input_digests) {
        inputs.push_back({{"path", path}, {"fnv1a64", digest}});
    }
    return {
        {"tool", "fdhom"},
        {"version", tool_version},
        {"command", command},
        {"seed", master_seed},
        {"config", config},
        {"inputs", inputs},
    };
}

std::string RunManifest::comment_line() const {
    return "fdhom-manifest: " + to_json().dump();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string fnv1a64_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64_hex(ss.str());
}

}  // namespace fdhom
