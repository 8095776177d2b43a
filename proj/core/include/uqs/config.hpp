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

// Configuration files in the "uqs-ini/1" dialect:
//
//   # comment            ; comment
//   version = 1          (keys before the first section live in section "")
//   [section]
//   key = value  # note  (whitespace is trimmed; ' #' starts a trailing comment)
//
// Section and key names are lowercase identifiers. A key may appear once per
// section, and a section may appear once. Lists are comma separated. Every
// value remembers its line and column so conversion errors point at the
// offending text. Unknown sections or keys are rejected with PolicyError.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uqs/compiler.hpp"
#include "uqs/experiments.hpp"
#include "uqs/hardware.hpp"
#include "uqs/pauli.hpp"

namespace uqs {

inline constexpr const char* kConfigDialect = "uqs-ini/1";

struct ConfigValue {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

class ConfigFile {
 public:
  static ConfigFile parse(std::string_view text, std::filesystem::path base_dir = {});
  /// Reads a file; relative paths inside it resolve against its directory.
  static ConfigFile load(const std::filesystem::path& path);

  bool has_section(std::string_view section) const;
  bool has(std::string_view section, std::string_view key) const;
  const ConfigValue* find(std::string_view section, std::string_view key) const;
  std::vector<std::string> sections() const;
  const std::filesystem::path& base_dir() const { return base_dir_; }
  /// Resolves a path value against the file's directory.
  std::filesystem::path resolve(const std::string& path) const;

  /// Throws PolicyError when the key is missing.
  const ConfigValue& require(std::string_view section, std::string_view key) const;
  std::string get_string(std::string_view section, std::string_view key) const;
  std::string get_string(std::string_view section, std::string_view key, std::string fallback) const;
  double get_double(std::string_view section, std::string_view key) const;
  double get_double(std::string_view section, std::string_view key, double fallback) const;
  std::uint64_t get_uint(std::string_view section, std::string_view key) const;
  std::uint64_t get_uint(std::string_view section, std::string_view key, std::uint64_t fallback) const;
  bool get_bool(std::string_view section, std::string_view key, bool fallback) const;
  std::vector<double> get_doubles(std::string_view section, std::string_view key) const;
  std::vector<std::uint64_t> get_uints(std::string_view section, std::string_view key) const;

  /// Rejects keys of `section` outside `allowed`.
  void allow_keys(std::string_view section, std::initializer_list<std::string_view> allowed) const;
  /// Rejects sections outside `allowed`.
  void allow_sections(std::initializer_list<std::string_view> allowed) const;

 private:
  std::map<std::string, std::map<std::string, ConfigValue, std::less<>>, std::less<>> data_;
  std::map<std::string, std::size_t, std::less<>> section_lines_;
  std::filesystem::path base_dir_;
};

/// Conversions used by the getters; errors carry the value's position.
double parse_config_double(const ConfigValue& v);
std::uint64_t parse_config_uint(const ConfigValue& v);
std::vector<ConfigValue> split_config_list(const ConfigValue& v, char separator = ',');

/// Hardware description. uqs1 keys: sites or rows/cols, boundary,
/// available_j (list or "all"), gamma. uqs2 keys: ions and spacing, or
/// positions as "x:y" list, kappa, crosstalk_threshold, gamma. A `file` key
/// loads the same keys from a separate file's [hardware] section.
HardwareModel parse_hardware(const ConfigFile& cfg, std::string_view section = "hardware");

/// Model section. `name` is dipole, ising, heisenberg, random_ising,
/// neighbor (sum of `pauli` pairs times `coupling`) or terms (inline
/// "coeff LABEL" list separated by ';'). `file` reads the Hamiltonian text
/// format instead. Geometry keys: sites or rows/cols, boundary, pattern,
/// spacing.
Hamiltonian parse_model(const ConfigFile& cfg, std::string_view section);
NamedModel parse_named_model(const ConfigFile& cfg, std::string_view section);

/// "Z0Z1", "X3" style sparse labels, or dense "ZZI" labels of length n.
PauliString parse_pauli_request(std::size_t n_qubits, std::string_view text);

PairGrouping parse_grouping(std::string_view name);

/// [errors] eta_local, eta_int, seed. A command-line seed overrides the file.
ErrorModel parse_error_model(const ConfigFile& cfg, std::optional<std::uint64_t> seed_override = std::nullopt);

/// [adiabatic] steps, theta1, ramp, stepping, record_every, degeneracy_tol
/// with [initial] and [target] model sections and optional [errors].
AdiabaticConfig parse_adiabatic(const ConfigFile& cfg, std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace uqs
