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

// Output files of one CLI run and the manifest that fingerprints them.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace uqs::cli {

enum class TableFormat { csv, json };

/// An empty cell is written as an empty CSV field or a JSON null.
using Cell = std::variant<std::monostate, std::string, double, std::int64_t>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  std::string to_csv() const;
  /// Array of objects keyed by column name.
  nlohmann::ordered_json to_json() const;
};

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

std::string sha256_hex(const std::string& bytes);

struct Artifact {
  std::string file;
  std::string sha256;
  std::size_t bytes = 0;
};

/// Writes files under one output directory and remembers their hashes.
class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path out_dir, TableFormat format);

  const std::filesystem::path& out_dir() const { return out_dir_; }
  TableFormat format() const { return format_; }

  void write(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const nlohmann::ordered_json& doc);
  /// `<stem>.csv` or `<stem>.json` depending on the table format.
  void write_table(const std::string& stem, const Table& table);

  const std::vector<Artifact>& artifacts() const { return artifacts_; }

 private:
  std::filesystem::path out_dir_;
  TableFormat format_;
  std::vector<Artifact> artifacts_;
};

/// What was run and what it produced. Contains nothing time- or
/// host-dependent, so identical inputs give byte-identical manifests.
struct RunManifest {
  std::string subcommand;
  std::string config_path;
  std::string config_sha256;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format;
  std::size_t threads = 1;
  std::size_t jobs = 1;
  std::size_t dense_cap = 0;
  std::vector<Artifact> artifacts;

  nlohmann::ordered_json to_json() const;
};

}  // namespace uqs::cli
