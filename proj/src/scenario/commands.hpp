#pragma once

#include <string>
#include <utility>
#include <vector>

namespace psu::scenario {

struct CommandResult {
  int exit_code = 0;
  std::string json;     // the report
  std::string csv;      // the main table
  std::string summary;  // short human-readable text for stdout
  // Extra (suffix, content) outputs, e.g. trajectories or plot series.
  std::vector<std::pair<std::string, std::string>> artifacts;
};

// Commands: verify, photon-search, audit, glue, pipeline, star.
// Never throws; failures are reported through exit_code and summary.
CommandResult run_command(const std::string& command, const std::string& config_text,
                          const std::string& overrides_text);

const std::vector<std::string>& command_names();

}  // namespace psu::scenario
