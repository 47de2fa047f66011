#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.h"

namespace chronsti::app {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kDataError = 3, kNumericError = 4 };

struct CommandOptions {
  std::string command;  // simulate | calibrate-dode | fit-bode | fit-bmm | cea | compare
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<EngineKind> engine;
  std::optional<std::string> data_dir;  // evidence CSVs; simulated from the config when absent
  std::string out_dir = "out";
};

/// Runs one subcommand, writing artifacts and manifest.json into out_dir.
/// Errors are reported on `err` as "<stage>: <message>" and mapped to exit codes.
int run_command(const CommandOptions& opts, std::ostream& log, std::ostream& err);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace chronsti::app
