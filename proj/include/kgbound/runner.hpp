#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "kgbound/config.hpp"

namespace kgbound::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_compute = 3,
    exit_verification = 4,
};

struct RunOptions
{
    std::optional<std::string> out_dir; // overrides output.directory
    bool seed_goldens = false;
    bool strict = false;
    int threads = 1; // 0 = hardware concurrency
};

/// Threads from KGBOUND_THREADS, or 1 when unset or invalid.
int threads_from_environment();

/// Runs one job. Artifacts go to the output directory; messages go to `out`
/// (catalog, summaries) and `err` (warnings, errors). Returns the exit code.
int run(const JobConfig& job, const RunOptions& options, std::ostream& out, std::ostream& err);

} // namespace kgbound::cli
