#pragma once

#include <string>

#include "shiftdyn/json_io.hpp"

namespace shiftdyn::cli {

enum ExitCode : int {
  kExitSatisfied = 0,
  kExitInvalid = 1,
  kExitViolated = 2,
  kExitInconclusive = 3,
};

struct Options {
  unsigned threads = 1;
};

struct CommandResult {
  int exit_code = kExitInvalid;
  io::Json report;
  std::string summary;  // one line for humans
  std::string csv;      // long-format traces: series,k,power,value
};

int exit_code_for(Status status);

CommandResult run_check(const io::Json& config, const Options& options = {});
CommandResult run_simulate(const io::Json& config,
                           const Options& options = {});
CommandResult run_construct(const io::Json& config,
                            const Options& options = {});

// Reads and parses a config file; SchemaError on unreadable or malformed
// input.
io::Json load_config(const std::string& path);

// SHIFTDYN_THREADS, or 1 when unset or unparsable.
unsigned default_threads();

}  // namespace shiftdyn::cli
