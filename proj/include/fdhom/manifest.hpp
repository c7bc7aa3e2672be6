#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fdhom {

// Everything needed to reproduce an output bit-for-bit: the command line,
// the resolved configuration, the master seed, and digests of the inputs.
struct RunManifest {
    std::string command;
    std::string tool_version;
    std::uint64_t master_seed = 0;
    nlohmann::json config;
    std::vector<std::pair<std::string, std::string>> input_digests;  // path, fnv1a64 hex

    nlohmann::json to_json() const;

    // Compact single-line form for embedding as a CSV comment.
    std::string comment_line() const;
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);
std::string digest_file(const std::string& path);

}  // namespace fdhom
