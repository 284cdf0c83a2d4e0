#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "azurep/json_io.hpp"

namespace azurep::wb {

inline constexpr const char* kVersion = "0.1.0";

struct Budgets {
    std::uint64_t max_points = 1'000'000;
    std::uint64_t max_group = 1'000'000;
    int attempts = 64;
};

struct RunOptions {
    std::optional<std::uint64_t> seed;        // command-line override
    std::optional<std::uint64_t> max_points;  // command-line override
    std::optional<std::uint64_t> max_group;   // command-line override
    bool include_timing = true;               // false in --compare mode
};

struct Outcome {
    io::Json report;
    int exit_code = 0; // 0 ok, 1 property_violated/infeasible, 2 input_error/refused
};

/// Dispatches one parsed problem object.
Outcome run_task(const io::Json& problem, const RunOptions& options);
/// Reads, parses and dispatches a problem file; parse errors become reports.
Outcome run_file(const std::string& path, const RunOptions& options);
/// Runs every file listed in the manifest and aggregates; the exit code is
/// the worst per-task code.
Outcome run_suite(const std::string& manifest_path, const RunOptions& options);

std::string render_text(const io::Json& report);

} // namespace azurep::wb
