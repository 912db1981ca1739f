#pragma once

#include <string>

namespace lyapgate {

struct CliOptions {
  std::string profile = "desk";  // "desk" refuses dim > 400; "full" allows it
  int threads = 0;               // sigma-copy worker cap; 0 = hardware default
  std::string output_dir;        // overrides config and LYAPGATE_OUTPUT_DIR
};

// Solver run driven by a JSON config; writes iterations.csv,
// final_control.csv, summary.json. Exit 0 when the infidelity tolerance was
// met, 2 when the run stopped at the iteration cap or the stagnation guard,
// 1 on any error (no output files in that case).
int cmd_run(const std::string& config_path, const CliOptions& opt);

// Open-loop constant-pulse baseline over the config's Tf grid; writes
// sweep.csv. Exit 0 on success, 1 on error.
int cmd_sweep_adiabatic(const std::string& config_path, const CliOptions& opt);

// Prints channel count, grid, per-channel min/max and trapezoidal integral
// of a control CSV. Exit 0 on success, 1 on malformed input.
int cmd_inspect(const std::string& control_path);

// Full argument parsing; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace lyapgate
