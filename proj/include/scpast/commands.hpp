#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace scpast::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeFailure = 1,
  kConfigInvalid = 2,
  kIoFailure = 3,
  kMalformedCsv = 4,
};

struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> output;
  std::optional<std::string> seeds;  // "a,b,c"
  std::optional<std::string> mode;   // cpast | scpast | both
  bool fast = false;
};

/// `simulate`, `track` or `sweep`. Errors are reported on `err`; the return
/// value is the process exit code.
int run_command(const std::string& command, const CommandOptions& options, std::ostream& err);

/// Sidecar paths derived from an output path: trace.csv -> trace.meta.json,
/// trace.cpast.estimate.csv.
std::filesystem::path metadata_path(const std::filesystem::path& output);
std::filesystem::path estimate_path(const std::filesystem::path& output, const std::string& mode);

}  // namespace scpast::cli
