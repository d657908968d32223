// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace spinvqe::cli {

/// Runs one reproduction target (table4, table5, fig1..fig4) into its own
/// subdirectory of `out_root` and prints a per-cell comparison against the
/// published values in `defaults`. Returns false if any checked cell is out
/// of tolerance.
bool reproduce_target(const std::string& target, const nlohmann::json& defaults,
                      const std::filesystem::path& out_root, std::uint64_t seed,
                      std::size_t threads, bool noise_off, std::ostream& log);

/// Cross-module invariant battery; prints one PASS/FAIL line per check and
/// returns false on any failure. `quick` selects a subset that finishes in
/// a few seconds.
bool run_validation(bool quick, std::ostream& log);

} // namespace spinvqe::cli
