#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "problem.hpp"

namespace berkcli {

enum ExitCode : int { Ok = 0, VerificationFailed = 1, BadInput = 2, Unresolved = 3 };

struct Options {
  std::optional<long> budget;  // adaptive refinement cap per edge
  std::string svg;
  std::string hints;
};

/// Runs eval | skeleton | verify | charts | oracle on a parsed problem.
/// Reports go to out, diagnostics to err; the return value is the exit code.
int run_command(const std::string& command, const Problem& problem, const Options& opts, std::ostream& out,
                std::ostream& err);

/// Reads and parses the file, then runs the command.
int run_file(const std::string& command, const std::string& path, const Options& opts, std::ostream& out,
             std::ostream& err);

}  // namespace berkcli
