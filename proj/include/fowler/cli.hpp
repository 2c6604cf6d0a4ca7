#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fowler/config.hpp"

namespace fowler::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kConfig = 2, kRuntime = 3, kStudyQuality = 4 };

/// Entry point: args[0] is the program name, args[1] the subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Subcommands on an already validated config.
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_symbol(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace fowler::cli
