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

#include "uqs/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "uqs/errors.hpp"

namespace uqs {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_')) {
      return false;
    }
  }
  return true;
}

// Trims blanks, returning the offset of the first kept character.
std::pair<std::string_view, std::size_t> trim(std::string_view s) {
  const std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {{}, s.size()};
  const std::size_t last = s.find_last_not_of(" \t\r");
  return {s.substr(first, last - first + 1), first};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[noreturn]] void bad_value(const ConfigValue& v, const std::string& what) { throw ParseError(v.line, v.column, what); }

Boundary parse_boundary(const ConfigValue& v) {
  if (v.text == "open") return Boundary::open;
  if (v.text == "periodic") return Boundary::periodic;
  bad_value(v, "boundary must be 'open' or 'periodic', got '" + v.text + "'");
}

GeometryPattern parse_pattern(const ConfigValue& v) {
  if (v.text == "rectangular") return GeometryPattern::rectangular;
  if (v.text == "triangular") return GeometryPattern::triangular;
  if (v.text == "hexagonal") return GeometryPattern::hexagonal;
  bad_value(v, "pattern must be rectangular, triangular or hexagonal, got '" + v.text + "'");
}

Pauli parse_pauli_letter(const ConfigValue& v) {
  if (v.text.size() == 1 && std::string_view("XYZ").find(v.text[0]) != std::string_view::npos) {
    return pauli_from_char(v.text[0]);
  }
  bad_value(v, "expected X, Y or Z, got '" + v.text + "'");
}

std::pair<std::size_t, std::size_t> grid_shape(const ConfigFile& cfg, std::string_view section) {
  if (cfg.has(section, "sites")) {
    if (cfg.has(section, "rows") || cfg.has(section, "cols")) {
      const ConfigValue& v = *cfg.find(section, "sites");
      bad_value(v, "give either 'sites' or 'rows' and 'cols', not both");
    }
    return {1, static_cast<std::size_t>(cfg.get_uint(section, "sites"))};
  }
  return {static_cast<std::size_t>(cfg.get_uint(section, "rows")),
          static_cast<std::size_t>(cfg.get_uint(section, "cols"))};
}

Geometry parse_geometry(const ConfigFile& cfg, std::string_view section) {
  Geometry g;
  std::tie(g.rows, g.cols) = grid_shape(cfg, section);
  if (const auto* v = cfg.find(section, "boundary")) g.boundary = parse_boundary(*v);
  if (const auto* v = cfg.find(section, "pattern")) g.pattern = parse_pattern(*v);
  g.spacing = cfg.get_double(section, "spacing", 1.0);
  g.validate();
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// ConfigFile

ConfigFile ConfigFile::parse(std::string_view text, std::filesystem::path base_dir) {
  ConfigFile cfg;
  cfg.base_dir_ = std::move(base_dir);
  std::string current;
  cfg.data_[current];
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto [line, offset] = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line[0] == '[') {
      if (line.back() != ']') throw ParseError(line_no, offset + line.size(), "section header must end with ']'");
      const auto [name, name_off] = trim(line.substr(1, line.size() - 2));
      if (!is_identifier(name)) {
        throw ParseError(line_no, offset + 2 + name_off, "invalid section name '" + std::string(name) + "'");
      }
      current = std::string(name);
      if (cfg.section_lines_.contains(current)) {
        throw ParseError(line_no, offset + 1, "section [" + current + "] appears twice");
      }
      cfg.section_lines_[current] = line_no;
      cfg.data_[current];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, offset + 1, "expected 'key = value'");
    const auto [key, key_off] = trim(line.substr(0, eq));
    if (!is_identifier(key)) {
      throw ParseError(line_no, offset + 1 + key_off, "invalid key '" + std::string(key) + "'");
    }
    std::string_view rest = line.substr(eq + 1);
    // Trailing '#' comments need a blank before the marker.
    for (std::size_t i = 1; i < rest.size(); ++i) {
      if (rest[i] == '#' && (rest[i - 1] == ' ' || rest[i - 1] == '\t')) {
        rest = rest.substr(0, i);
        break;
      }
    }
    const auto [value, value_off] = trim(rest);
    const std::size_t value_col = offset + eq + 1 + value_off + 1;
    if (value.empty()) throw ParseError(line_no, value_col, "key '" + std::string(key) + "' has no value");
    auto& section = cfg.data_[current];
    if (section.contains(key)) {
      throw ParseError(line_no, offset + 1 + key_off, "key '" + std::string(key) + "' repeated in section");
    }
    section.emplace(std::string(key), ConfigValue{std::string(value), line_no, value_col});
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

bool ConfigFile::has_section(std::string_view section) const {
  auto it = data_.find(section);
  return it != data_.end() && (section.empty() ? !it->second.empty() : section_lines_.contains(section));
}

bool ConfigFile::has(std::string_view section, std::string_view key) const { return find(section, key) != nullptr; }

const ConfigValue* ConfigFile::find(std::string_view section, std::string_view key) const {
  auto s = data_.find(section);
  if (s == data_.end()) return nullptr;
  auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

std::vector<std::string> ConfigFile::sections() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : section_lines_) out.push_back(name);
  return out;
}

std::filesystem::path ConfigFile::resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  return p.is_absolute() || base_dir_.empty() ? p : base_dir_ / p;
}

const ConfigValue& ConfigFile::require(std::string_view section, std::string_view key) const {
  if (const auto* v = find(section, key)) return *v;
  throw PolicyError("missing key '" + std::string(key) + "' in section [" + std::string(section) + "]");
}

std::string ConfigFile::get_string(std::string_view section, std::string_view key) const {
  return require(section, key).text;
}

std::string ConfigFile::get_string(std::string_view section, std::string_view key, std::string fallback) const {
  const auto* v = find(section, key);
  return v ? v->text : fallback;
}

double ConfigFile::get_double(std::string_view section, std::string_view key) const {
  return parse_config_double(require(section, key));
}

double ConfigFile::get_double(std::string_view section, std::string_view key, double fallback) const {
  const auto* v = find(section, key);
  return v ? parse_config_double(*v) : fallback;
}

std::uint64_t ConfigFile::get_uint(std::string_view section, std::string_view key) const {
  return parse_config_uint(require(section, key));
}

std::uint64_t ConfigFile::get_uint(std::string_view section, std::string_view key, std::uint64_t fallback) const {
  const auto* v = find(section, key);
  return v ? parse_config_uint(*v) : fallback;
}

bool ConfigFile::get_bool(std::string_view section, std::string_view key, bool fallback) const {
  const auto* v = find(section, key);
  if (!v) return fallback;
  if (v->text == "true" || v->text == "yes" || v->text == "1") return true;
  if (v->text == "false" || v->text == "no" || v->text == "0") return false;
  bad_value(*v, "expected true or false, got '" + v->text + "'");
}

std::vector<double> ConfigFile::get_doubles(std::string_view section, std::string_view key) const {
  std::vector<double> out;
  for (const auto& item : split_config_list(require(section, key))) out.push_back(parse_config_double(item));
  return out;
}

std::vector<std::uint64_t> ConfigFile::get_uints(std::string_view section, std::string_view key) const {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_config_list(require(section, key))) out.push_back(parse_config_uint(item));
  return out;
}

void ConfigFile::allow_keys(std::string_view section, std::initializer_list<std::string_view> allowed) const {
  auto s = data_.find(section);
  if (s == data_.end()) return;
  for (const auto& [key, value] : s->second) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw PolicyError("line " + std::to_string(value.line) + ": unknown key '" + key + "' in section [" +
                        std::string(section) + "]");
    }
  }
}

void ConfigFile::allow_sections(std::initializer_list<std::string_view> allowed) const {
  for (const auto& [name, line] : section_lines_) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw PolicyError("line " + std::to_string(line) + ": unknown section [" + name + "]");
    }
  }
}

double parse_config_double(const ConfigValue& v) {
  char* end = nullptr;
  const double x = std::strtod(v.text.c_str(), &end);
  if (v.text.empty() || end != v.text.c_str() + v.text.size() || !std::isfinite(x)) {
    bad_value(v, "expected a finite number, got '" + v.text + "'");
  }
  return x;
}

std::uint64_t parse_config_uint(const ConfigValue& v) {
  if (v.text.empty() || v.text.find_first_not_of("0123456789") != std::string::npos) {
    bad_value(v, "expected a non-negative integer, got '" + v.text + "'");
  }
  errno = 0;
  const unsigned long long x = std::strtoull(v.text.c_str(), nullptr, 10);
  if (errno == ERANGE) bad_value(v, "integer out of range");
  return x;
}

std::vector<ConfigValue> split_config_list(const ConfigValue& v, char separator) {
  std::vector<ConfigValue> out;
  std::size_t start = 0;
  while (start <= v.text.size()) {
    std::size_t end = v.text.find(separator, start);
    if (end == std::string::npos) end = v.text.size();
    const auto [item, off] = trim(std::string_view(v.text).substr(start, end - start));
    const std::size_t col = v.column + start + off;
    if (item.empty()) throw ParseError(v.line, col, "empty list item");
    out.push_back({std::string(item), v.line, col});
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Domain sections

HardwareModel parse_hardware(const ConfigFile& cfg, std::string_view section) {
  if (const auto* file = cfg.find(section, "file")) {
    cfg.allow_keys(section, {"file"});
    const ConfigFile other = ConfigFile::load(cfg.resolve(file->text));
    if (other.has(section, "file")) bad_value(*other.find(section, "file"), "hardware files cannot chain further");
    return parse_hardware(other, section);
  }
  const ConfigValue& platform = cfg.require(section, "platform");
  if (platform.text == "uqs1") {
    cfg.allow_keys(section, {"platform", "sites", "rows", "cols", "boundary", "available_j", "gamma"});
    LatticeModel m;
    std::tie(m.rows, m.cols) = grid_shape(cfg, section);
    if (const auto* v = cfg.find(section, "boundary")) m.boundary = parse_boundary(*v);
    const ConfigValue& js = cfg.require(section, "available_j");
    if (js.text == "all") {
      for (std::size_t j = 1; j < std::max(m.rows, m.cols); ++j) m.available_j.insert(static_cast<int>(j));
    } else {
      for (const auto& item : split_config_list(js)) m.available_j.insert(static_cast<int>(parse_config_uint(item)));
    }
    m.gamma = cfg.get_double(section, "gamma", 1.0);
    m.validate();
    return m;
  }
  if (platform.text == "uqs2") {
    cfg.allow_keys(section, {"platform", "ions", "spacing", "positions", "kappa", "crosstalk_threshold", "gamma"});
    TrapArrayModel m;
    if (const auto* pos = cfg.find(section, "positions")) {
      if (cfg.has(section, "ions")) bad_value(*pos, "give either 'positions' or 'ions', not both");
      for (const auto& item : split_config_list(*pos)) {
        const std::size_t colon = item.text.find(':');
        Position p;
        if (colon == std::string::npos) {
          p.x = parse_config_double(item);
        } else {
          p.x = parse_config_double({item.text.substr(0, colon), item.line, item.column});
          p.y = parse_config_double({item.text.substr(colon + 1), item.line, item.column + colon + 1});
        }
        m.positions.push_back(p);
      }
    } else {
      m = TrapArrayModel::chain(cfg.get_uint(section, "ions"), cfg.get_double(section, "spacing", 1.0));
    }
    m.kappa = cfg.get_double(section, "kappa", m.kappa);
    m.crosstalk_threshold = cfg.get_double(section, "crosstalk_threshold", m.crosstalk_threshold);
    m.gamma = cfg.get_double(section, "gamma", m.gamma);
    m.validate();
    return m;
  }
  bad_value(platform, "platform must be 'uqs1' or 'uqs2', got '" + platform.text + "'");
}

NamedModel parse_named_model(const ConfigFile& cfg, std::string_view section) {
  cfg.allow_keys(section, {"name", "sites", "rows", "cols", "boundary", "pattern", "spacing", "coupling", "field",
                           "field_direction", "spread", "couplings", "site_fields", "seed"});
  const ConfigValue& name = cfg.require(section, "name");
  NamedModel m;
  try {
    m.kind = parse_model_kind(name.text);
  } catch (const InvalidArgument& e) {
    bad_value(name, e.what());
  }
  m.geometry = parse_geometry(cfg, section);
  m.coupling = cfg.get_double(section, "coupling", 1.0);
  m.field = cfg.get_double(section, "field", 0.0);
  if (cfg.has(section, "field_direction")) {
    const auto d = cfg.get_doubles(section, "field_direction");
    if (d.size() != 3) bad_value(*cfg.find(section, "field_direction"), "field_direction needs three components");
    m.field_direction = Vec3(d[0], d[1], d[2]);
    if (m.field_direction.norm() == 0.0) bad_value(*cfg.find(section, "field_direction"), "zero field direction");
    m.field_direction.normalize();
  }
  m.coupling_spread = cfg.get_double(section, "spread", 0.0);
  if (const auto* v = cfg.find(section, "couplings")) {
    for (const auto& item : split_config_list(*v)) {
      const std::size_t dash = item.text.find('-');
      const std::size_t colon = item.text.find(':');
      if (dash == std::string::npos || colon == std::string::npos || colon < dash) {
        bad_value(item, "expected 'a-b:J', got '" + item.text + "'");
      }
      const auto a = parse_config_uint({item.text.substr(0, dash), item.line, item.column});
      const auto b = parse_config_uint({item.text.substr(dash + 1, colon - dash - 1), item.line, item.column + dash + 1});
      m.pair_couplings[{a, b}] = parse_config_double({item.text.substr(colon + 1), item.line, item.column + colon + 1});
    }
  }
  if (cfg.has(section, "site_fields")) m.site_fields = cfg.get_doubles(section, "site_fields");
  if (cfg.has(section, "seed")) m.seed = cfg.get_uint(section, "seed");
  return m;
}

Hamiltonian parse_model(const ConfigFile& cfg, std::string_view section) {
  if (!cfg.has_section(section)) throw PolicyError("missing section [" + std::string(section) + "]");
  if (const auto* file = cfg.find(section, "file")) {
    cfg.allow_keys(section, {"file"});
    return Hamiltonian::parse(read_file(cfg.resolve(file->text)));
  }
  const ConfigValue& name = cfg.require(section, "name");
  if (name.text == "terms") {
    cfg.allow_keys(section, {"name", "terms"});
    const ConfigValue& v = cfg.require(section, "terms");
    std::vector<PauliString> terms;
    std::optional<std::size_t> n;
    for (const auto& item : split_config_list(v, ';')) {
      std::istringstream in(item.text);
      std::string coeff, label, extra;
      if (!(in >> coeff >> label) || (in >> extra)) bad_value(item, "expected 'coeff LABEL', got '" + item.text + "'");
      const double c = parse_config_double({coeff, item.line, item.column});
      try {
        terms.push_back(PauliString::from_label(label, c));
      } catch (const InvalidArgument& e) {
        bad_value(item, e.what());
      }
      if (n && *n != label.size()) bad_value(item, "all labels must have the same length");
      n = label.size();
    }
    return Hamiltonian(*n, std::move(terms));
  }
  if (name.text == "neighbor") {
    cfg.allow_keys(section, {"name", "sites", "rows", "cols", "boundary", "pattern", "spacing", "pauli", "coupling"});
    return neighbor_sum(parse_geometry(cfg, section), parse_pauli_letter(cfg.require(section, "pauli")),
                        cfg.get_double(section, "coupling", 1.0));
  }
  return build_model(parse_named_model(cfg, section));
}

PauliString parse_pauli_request(std::size_t n_qubits, std::string_view text) {
  const auto dense = [&] {
    return text.size() == n_qubits && text.find_first_not_of("IXYZ") == std::string_view::npos;
  };
  if (dense()) return PauliString::from_label(text);
  std::vector<Pauli> ops(n_qubits, Pauli::I);
  std::size_t i = 0;
  if (text.empty()) throw InvalidArgument("empty observable");
  while (i < text.size()) {
    const char c = text[i];
    if (std::string_view("XYZ").find(c) == std::string_view::npos) {
      throw InvalidArgument("observable '" + std::string(text) + "': expected X, Y or Z at position " +
                            std::to_string(i + 1));
    }
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) throw InvalidArgument("observable '" + std::string(text) + "': missing qubit index");
    const std::size_t q = std::stoul(std::string(text.substr(i + 1, j - i - 1)));
    if (q >= n_qubits) throw InvalidArgument("observable '" + std::string(text) + "': qubit index out of range");
    if (ops[q] != Pauli::I) throw InvalidArgument("observable '" + std::string(text) + "': qubit repeated");
    ops[q] = pauli_from_char(c);
    i = j;
  }
  return PauliString(std::move(ops));
}

PairGrouping parse_grouping(std::string_view name) {
  if (name == "automatic") return PairGrouping::automatic;
  if (name == "per_pair") return PairGrouping::per_pair;
  if (name == "global_push") return PairGrouping::global_push;
  throw InvalidArgument("grouping must be automatic, per_pair or global_push, got '" + std::string(name) + "'");
}

ErrorModel parse_error_model(const ConfigFile& cfg, std::optional<std::uint64_t> seed_override) {
  ErrorModel err;
  cfg.allow_keys("errors", {"eta", "eta_local", "eta_int", "seed"});
  if (const auto* eta = cfg.find("errors", "eta")) {
    if (cfg.has("errors", "eta_local") || cfg.has("errors", "eta_int")) {
      bad_value(*eta, "give either 'eta' or 'eta_local'/'eta_int'");
    }
    err.eta_local = err.eta_int = parse_config_double(*eta);
  } else {
    err.eta_local = cfg.get_double("errors", "eta_local", 0.0);
    err.eta_int = cfg.get_double("errors", "eta_int", 0.0);
  }
  if (cfg.has("errors", "seed")) err.seed = cfg.get_uint("errors", "seed");
  if (seed_override) err.seed = seed_override;
  err.validate();
  return err;
}

AdiabaticConfig parse_adiabatic(const ConfigFile& cfg, std::optional<std::uint64_t> seed_override) {
  cfg.allow_keys("adiabatic", {"steps", "theta1", "ramp", "stepping", "record_every", "degeneracy_tol"});
  AdiabaticConfig c;
  c.h_initial = parse_model(cfg, "initial");
  c.h_target = parse_model(cfg, "target");
  c.steps = cfg.get_uint("adiabatic", "steps");
  c.theta1 = cfg.get_double("adiabatic", "theta1");
  if (const auto* v = cfg.find("adiabatic", "ramp")) {
    try {
      c.ramp = parse_ramp(v->text);
    } catch (const InvalidArgument& e) {
      bad_value(*v, e.what());
    }
  }
  if (const auto* v = cfg.find("adiabatic", "stepping")) {
    if (v->text == "trotter") c.stepping = Stepping::trotter;
    else if (v->text == "exact") c.stepping = Stepping::exact;
    else bad_value(*v, "stepping must be 'trotter' or 'exact'");
  }
  c.record_every = cfg.get_uint("adiabatic", "record_every", 1);
  c.degeneracy_tol = cfg.get_double("adiabatic", "degeneracy_tol", 1e-9);
  c.error_model = parse_error_model(cfg, seed_override);
  return c;
}

}  // namespace uqs
