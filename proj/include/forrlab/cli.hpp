#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace forrlab::cli {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

// Parsed experiment description; every subcommand validates its parameters
// against the module preconditions before dispatch.
struct ExperimentConfig {
    std::string subcommand;
    json params;                // subcommand-specific
    std::uint64_t seed = 0;
    std::optional<std::string> output_path; // default stdout
    std::string format = "json"; // json | csv
};

struct Report {
    json config_echo;
    std::string tool_version = kToolVersion;
    json results;
    double wall_ms = 0;
    std::uint64_t seed = 0;

    json to_json() const;
};

// Dispatches, writes the report to the configured destination, and returns
// it. Throws std::invalid_argument with a named diagnostic on precondition
// violations.
Report run(const ExperimentConfig& config);

// Long-format CSV (parameter columns + metric + stderr) from homogeneous
// result records; throws on heterogeneous inputs.
std::string emit_scaling_table(const std::vector<Report>& results);

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "FORRLAB_OUT_DIR";

} // namespace forrlab::cli
