// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "spinvqe/manifest.hpp"
#include "spinvqe/runner.hpp"
#include "spinvqe/version.hpp"

using namespace spinvqe;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("spinvqe_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST(ConfigHash, CanonicalAndSensitive) {
    const nlohmann::json a{{"b", 1}, {"a", 2}};
    const nlohmann::json b{{"a", 2}, {"b", 1}};
    EXPECT_EQ(config_hash(a), config_hash(b)); // key order canonicalized
    const nlohmann::json c{{"a", 2}, {"b", 3}};
    EXPECT_NE(config_hash(a), config_hash(c));
    EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(RunManifest, WriteAndVerifyRoundTrip) {
    TempDir tmp;
    ExperimentConfig config;
    config.chain = HeisenbergChain(2);
    config.ansatz = AnsatzSpec{AnsatzFamily::Exchange, 2, 1};
    RunManifest manifest = RunManifest::create(config_to_json(config), 1234);
    manifest.add_output(tmp.path / "landscape.csv");
    manifest.write(tmp.path);

    EXPECT_TRUE(fs::exists(tmp.path / "manifest.json"));
    EXPECT_TRUE(fs::exists(tmp.path / "config.json"));
    EXPECT_TRUE(RunManifest::verify(tmp.path));

    // config copy must round-trip into a runnable configuration
    std::ifstream in(tmp.path / "config.json");
    const ExperimentConfig back = config_from_json(nlohmann::json::parse(in));
    EXPECT_EQ(back.chain.sites, 2u);

    const std::ifstream man(tmp.path / "manifest.json");
    std::stringstream buffer;
    buffer << man.rdbuf();
    const nlohmann::json j = nlohmann::json::parse(buffer.str());
    EXPECT_EQ(j["version"], kVersion);
    EXPECT_EQ(j["master_seed"], 1234);
    EXPECT_FALSE(j["timestamp"].get<std::string>().empty());
}

TEST(RunManifest, TamperedConfigFailsVerification) {
    TempDir tmp;
    ExperimentConfig config;
    config.chain = HeisenbergChain(3);
    config.ansatz = AnsatzSpec{AnsatzFamily::Exchange, 3, 1};
    RunManifest::create(config_to_json(config), 7).write(tmp.path);
    ASSERT_TRUE(RunManifest::verify(tmp.path));

    nlohmann::json edited;
    {
        std::ifstream in(tmp.path / "config.json");
        edited = nlohmann::json::parse(in);
    }
    edited["chain"]["sites"] = 4;
    std::ofstream out(tmp.path / "config.json");
    out << edited.dump(2);
    out.close();
    EXPECT_FALSE(RunManifest::verify(tmp.path));
}

TEST(RunManifest, MissingFilesFailVerification) {
    TempDir tmp;
    EXPECT_FALSE(RunManifest::verify(tmp.path));
}
