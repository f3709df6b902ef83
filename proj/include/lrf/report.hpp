#ifndef LRF_REPORT_HPP
#define LRF_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lrf/errors.hpp"

namespace lrf {

using Json = nlohmann::ordered_json;

/// Resolved job description shared by the config file and the CLI
/// flags. Exactly one of b / beta must be present.
struct JobConfig {
    std::optional<std::vector<double>> b;    ///< two-sided coefficients
    std::optional<std::vector<double>> beta; ///< one-sided coefficients
    int K = 0;             ///< correlation depth; 0 = automatic
    int order = 0;         ///< model order; 0 = band width of the symbol
    long long T = 100000;  ///< path length
    int reps = 4;          ///< verify replications
    std::uint64_t seed = 12345;
    int grid = 4096;       ///< spectral grid size (power of two)
    std::string format = "json";    ///< "json" or "csv"
    std::string generator = "ar";   ///< simulate backend: "ar" or "circulant"
};

/// Parse a config block; unknown keys are rejected. Throws UsageError.
JobConfig config_from_json(const Json& node);

/// Serialize the resolved config (the report's `input` block except for
/// the command name).
Json config_to_json(const JobConfig& config);

/// Check the JobConfig invariants; throws UsageError on violation.
void validate_config(const JobConfig& config);

struct CommandResult {
    Json report;
    int exit_code = 0;
};

CommandResult run_analyze(const JobConfig& config);
CommandResult run_factor(const JobConfig& config);
CommandResult run_simulate(const JobConfig& config);
CommandResult run_verify(const JobConfig& config);

/// Flatten a report into rows (name, index, value, stderr). Arrays get
/// one row per entry; a key X with a sibling X_stderr fills the stderr
/// column.
std::string render_csv(const Json& report);

/// Render in the format requested by the embedded input block.
std::string render_report(const Json& report);

} // namespace lrf

#endif // LRF_REPORT_HPP
