#pragma once

#include <string>

#include "cli_config.hpp"

namespace qee::cli {

// Subcommand drivers. Each returns a process exit code: 0 success,
// 2 validation error, 3 numerical/oracle failure (thrown errors are mapped
// by the caller).

int cmd_gen_bath(const RunConfig& config);
int cmd_run_protocol(const RunConfig& config);
int cmd_echo(const RunConfig& config);
int cmd_noise(const RunConfig& config);
int cmd_verify(const RunConfig& config, const std::string& inject_fault);

}  // namespace qee::cli
