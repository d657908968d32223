// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace spinvqe {

/// FNV-1a 64-bit over the canonical (key-sorted) JSON dump, as a hex string.
std::string config_hash(const nlohmann::json& config);

/// Reproducibility sidecar written next to every output set: the config
/// copy plus its hash, tool version, timestamp, master seed and the files
/// produced. Hash is recomputable from the stored config copy.
struct RunManifest {
    nlohmann::json config;
    std::string hash;
    std::string version;
    std::string timestamp; // ISO 8601 UTC
    std::uint64_t master_seed = 0;
    std::vector<std::string> outputs;

    static RunManifest create(const nlohmann::json& config, std::uint64_t master_seed);

    void add_output(const std::filesystem::path& path);

    /// Writes manifest.json and config.json into the directory.
    void write(const std::filesystem::path& dir) const;

    /// Reloads a manifest and confirms the stored hash matches the stored
    /// config copy.
    static bool verify(const std::filesystem::path& dir);
};

} // namespace spinvqe
