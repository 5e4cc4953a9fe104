#pragma once

#include <optional>
#include <string>

#include "jsfkit/config.hpp"
#include "jsfkit/io.hpp"

namespace jsfkit {

struct RunOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::size_t> grid_n;  // overrides grid.n
  std::string format = "csv";         // csv | bin
  bool strict = false;                // escalate numerical warnings to exit 3
};

// Executes one CLI subcommand pipeline (jsf | schmidt | metrics | highgain |
// scan | design), writes the requested artifacts plus the run manifest, and
// returns the process exit code: 0 success, 3 when warnings were raised and
// strict mode is on. Validation problems throw std::invalid_argument.
int run_subcommand(const std::string& cmd, const RunOptions& opt);

}  // namespace jsfkit
