#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

namespace lcomp::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kSpecError = 2,
  kIoError = 3,
};

/// Runs the `lcomp` command line. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Writes `content` to `path` via a sibling temp file and rename.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// File-name-safe form of a spec label.
std::string slug(std::string_view label);

}  // namespace lcomp::cli
