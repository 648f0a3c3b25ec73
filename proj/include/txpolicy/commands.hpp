#pragma once

#include <string>

#include "txpolicy/config.hpp"

namespace txpolicy {

// Subcommand bodies. Each returns a process exit code: 0 success,
// 2 validation failure, 3 verification mismatch.
int cmd_compute_thresholds(const ExperimentConfig& cfg, const std::string& out_path);
int cmd_simulate(const ExperimentConfig& cfg, const std::string& out_path);
int cmd_compare(const ExperimentConfig& cfg, const std::string& out_path);
int cmd_verify(const ExperimentConfig& cfg);

// Full argument-vector entry point used by the binary and by tests.
int cli_main(int argc, const char* const* argv);

}  // namespace txpolicy
