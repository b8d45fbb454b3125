#pragma once

#include <iosfwd>
#include <string>

#include "zipfcomp/abm.hpp"

namespace zipfcomp {

inline constexpr const char* kToolName = "zipfcomp";
inline constexpr const char* kToolVersion = "0.1.0";

/// Parses a sweep config JSON document. Fields mirror SweepConfig; `seed` is
/// optional and reported through `has_seed`. Unknown fields are rejected.
SweepConfig parse_sweep_config(const std::string& json_text, bool* has_seed = nullptr);

/// Runs one subcommand (ingest, rank-dynamics, cross-section, simulate).
/// Returns the process exit code: 0 success, 1 usage, 2 data, 3 numerical.
/// Diagnostics go to `err` as a single line.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zipfcomp
