#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace lamelab {

inline constexpr const char* kVersion = "0.1.0";

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

/**
 * Runs one experiment subcommand and writes its CSV, .dat and manifest files into
 * out_dir once everything has been computed.
 *
 * Exit codes: 0 success, 2 validation failure (bad config, unknown subcommand,
 * unwritable output directory), 3 numerical non-convergence or resonance.
 */
int run(const std::string& subcommand, const std::string& config_path, const std::string& out_dir,
        const RunOverrides& overrides = {});

}  // namespace lamelab
