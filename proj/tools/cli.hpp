// Copyright 2026 The npforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace npforge::cli {

enum ExitCode : int {
  kOk = 0,
  kTooLarge = 1,     // instance exceeds a documented size limit
  kBadInput = 2,     // malformed file, flags or parameters
  kOracleFailed = 3, // --oracle found a disagreement
  kInternal = 4,
};

/// Runs one invocation. args excludes the program name. The one-line summary
/// goes to `out`, diagnostics to `err`; reports are written to files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace npforge::cli
