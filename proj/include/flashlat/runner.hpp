#pragma once

#include <ostream>
#include <string>

#include "flashlat/run_config.hpp"

namespace flashlat {

/// Subcommand bodies shared by the CLI and the test suites. Each writes its
/// artifacts atomically (write-then-rename) under out_dir, logs the config
/// hash and rng seed, and returns a process exit status.
int run_verify(const RunConfig& config, const std::string& out_dir, std::ostream& log,
               int threads);
int run_simulate(const RunConfig& config, const std::string& out_dir, std::ostream& log,
                 int threads);
int run_enumerate_cells(const RunConfig& config, const std::string& out_dir, std::ostream& log);
int run_compare_noninteracting(const RunConfig& config, const std::string& out_dir,
                               std::ostream& log);
int run_flat_limit(const RunConfig& config, const std::string& out_dir, std::ostream& log);
int run_param_independence(const RunConfig& config, const std::string& out_dir,
                           std::ostream& log);

/// "%.17g" rendering used for CSV values.
std::string format_float(double value);

void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace flashlat
