// Copyright 2026 The Soundfield Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace soundfield::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,      // any other library error
  kUsage = 2,        // bad command line
  kConfig = 3,       // ConfigError
  kFormat = 4,       // FormatError, UnsupportedFormat
  kOrderTooHigh = 5,
  kDomain = 6,       // DomainError, DegenerateInput, DegenerateReference
};

// Runs the `soundfield` command line. args excludes the program name.
// Results go to `out` as JSON (or a flat table with --pretty), diagnostics to
// `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// "a,b,c" -> three finite numbers. Throws InvalidArgument.
std::vector<double> ParseTriple(const std::string& text);

}  // namespace soundfield::cli
