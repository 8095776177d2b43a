// Copyright 2026 The UQS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommands of the uqs tool.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "artifacts.hpp"

namespace uqs::cli {

/// Flags shared by every subcommand.
struct RunOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  bool single_thread = false;
  bool oracle = false;
  std::filesystem::path out_dir = "uqs-out";
  TableFormat format = TableFormat::csv;
  /// Overrides the step count of adiabatic runs and sweeps.
  std::optional<std::size_t> steps;

  std::size_t threads() const { return single_thread ? 1 : std::max<std::size_t>(1, jobs); }
};

// Each command writes its artifacts plus manifest.json under out_dir, prints
// a short summary to `out` and returns the process exit code. Failures are
// reported by throwing the core exception types.
int cmd_compile(const RunOptions& opts, std::ostream& out);
int cmd_simulate(const RunOptions& opts, std::ostream& out);
int cmd_adiabatic(const RunOptions& opts, std::ostream& out);
int cmd_cost(const RunOptions& opts, std::ostream& out);
int cmd_crosstalk(const RunOptions& opts, std::ostream& out);

}  // namespace uqs::cli
