#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orelab/scenario.hpp"

namespace orelab {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitPropertyFailure = 2, kExitUnknown = 3 };

struct CommandArgs {
  std::optional<std::string> poly;
  std::optional<std::string> h;
  std::optional<std::string> f;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
};

struct CommandResult {
  json report;
  int exit_code = kExitOk;
  std::string summary;  // one human-readable line per finding
};

std::vector<std::string> command_names();

/// Runs one command against a scenario. Throws SchemaError/ParseError/DomainError
/// on bad input; verdicts and failed properties are reported, not thrown.
CommandResult run_command(const ScenarioConfig& config, std::string_view command, const CommandArgs& args);

}  // namespace orelab
