// SPDX-License-Identifier: Apache-2.0
#include "spinvqe/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "spinvqe/version.hpp"

namespace spinvqe {

std::string config_hash(const nlohmann::json& config) {
    // nlohmann::json keeps object keys sorted, so dump() is canonical.
    const std::string text = config.dump();
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a offset basis
    for (unsigned char c : text) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setfill('0') << std::setw(16) << h;
    return out.str();
}

RunManifest RunManifest::create(const nlohmann::json& config, std::uint64_t master_seed) {
    RunManifest m;
    m.config = config;
    m.hash = config_hash(config);
    m.version = kVersion;
    m.master_seed = master_seed;

    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm utc{};
    gmtime_r(&t, &utc);
    std::ostringstream ts;
    ts << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
    m.timestamp = ts.str();
    return m;
}

void RunManifest::add_output(const std::filesystem::path& path) {
    outputs.push_back(path.string());
}

void RunManifest::write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "config.json");
        if (!out) {
            throw std::runtime_error("cannot write " + (dir / "config.json").string());
        }
        out << config.dump(2) << '\n';
    }
    nlohmann::json j{{"config_hash", hash},
                     {"version", version},
                     {"timestamp", timestamp},
                     {"master_seed", master_seed},
                     {"outputs", outputs}};
    std::ofstream out(dir / "manifest.json");
    if (!out) {
        throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
    }
    out << j.dump(2) << '\n';
}

bool RunManifest::verify(const std::filesystem::path& dir) {
    std::ifstream cfg(dir / "config.json");
    std::ifstream man(dir / "manifest.json");
    if (!cfg || !man) return false;
    nlohmann::json config = nlohmann::json::parse(cfg, nullptr, false);
    nlohmann::json manifest = nlohmann::json::parse(man, nullptr, false);
    if (config.is_discarded() || manifest.is_discarded()) return false;
    return manifest.value("config_hash", "") == config_hash(config);
}

} // namespace spinvqe
