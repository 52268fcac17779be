#pragma once

// Command-line front end: subcommands scales, simulate, dirac, phonon,
// cluster and sweep. Each reads a flat key-value config, writes plot-ready
// CSV/JSON into the output directory together with `resolved_config.txt`,
// and prints a one-line summary.
//
// Exit codes: 0 success, 2 configuration error, 3 domain or numerical error,
// 4 I/O error. Failures also print a JSON error record
// {"module", "operation", "message"} on the error stream.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "inerton/errors.hpp"

namespace inerton::cli {

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string command;
  std::filesystem::path config_path;
  std::filesystem::path output_dir{"."};
  OutputFormat format{OutputFormat::json};
  std::uint64_t seed{1};
  int jobs{1};
};

class IoError : public Error {
 public:
  IoError(const std::string& operation, const std::string& message)
      : Error("cli", operation, message) {}
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitIo = 4;

/// Executes `config.command`; `sweep` is dispatched to sweep().
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Runs a target subcommand once per grid value of one parameter and writes
/// `sweep.csv` keyed by that parameter, rows in grid order.
int sweep(const RunConfig& config, std::ostream& out, std::ostream& err);

/// argv entry point used by the `inerton_lab` executable.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace inerton::cli
