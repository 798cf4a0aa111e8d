// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "dataworth/errors.hpp"
#include "dataworth/report.hpp"

namespace dataworth::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,  // invalid answers, mismatched replay totals
  kIoOrParse = 2,   // also unknown commands and flags
  kInternal = 3,
};

/// Options shared by every command.
struct CliConfig {
  /// Extension catalog merged over the canonical one; env DATAWORTH_CATALOG.
  std::optional<std::filesystem::path> catalog;
  std::optional<std::filesystem::path> weights;
  /// "raw" or "normalized"; overrides the weights file mode.
  std::optional<std::string> mode;
  RenderFormat format = RenderFormat::human_table;
  std::optional<std::filesystem::path> rulepack;
  std::size_t sample_rows = 10000;
  int verbosity = 0;
  bool provenance = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Exit code for a core error of `kind`.
int exit_code_for(ErrorKind kind);

/// Runs one invocation. stdout gets the rendered document only; errors go to
/// `err` as "error\t<kind>\t<message>".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dataworth::cli
