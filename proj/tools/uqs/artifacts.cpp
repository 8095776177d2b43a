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

#include "artifacts.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

#include "uqs/config.hpp"

namespace uqs::cli {

namespace {

bool needs_quotes(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_field(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (!needs_quotes(v)) return v;
          std::string out = "\"";
          for (char c : v) {
            if (c == '"') out += '"';
            out += c;
          }
          return out + "\"";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

nlohmann::ordered_json json_value(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        else return v;
      },
      cell);
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row does not match its columns");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json Table::to_json() const {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[columns[i]] = json_value(row[i]);
    doc.push_back(std::move(obj));
  }
  return doc;
}

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf.data(), end);
}

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

ArtifactWriter::ArtifactWriter(std::filesystem::path out_dir, TableFormat format)
    : out_dir_(std::move(out_dir)), format_(format) {
  std::filesystem::create_directories(out_dir_);
}

void ArtifactWriter::write(const std::string& name, const std::string& content) {
  const auto path = out_dir_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path.string());
  artifacts_.push_back({name, sha256_hex(content), content.size()});
}

void ArtifactWriter::write_json(const std::string& name, const nlohmann::ordered_json& doc) {
  write(name, doc.dump(2) + "\n");
}

void ArtifactWriter::write_table(const std::string& stem, const Table& table) {
  if (format_ == TableFormat::csv) write(stem + ".csv", table.to_csv());
  else write_json(stem + ".json", table.to_json());
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["tool"] = "uqs";
  doc["config_dialect"] = kConfigDialect;
  doc["subcommand"] = subcommand;
  doc["config"] = config_path;
  doc["config_sha256"] = config_sha256;
  doc["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  doc["out_dir"] = out_dir;
  doc["format"] = format;
  doc["threads"] = threads;
  doc["jobs"] = jobs;
  doc["dense_cap"] = dense_cap;
  auto list = nlohmann::ordered_json::array();
  for (const auto& a : artifacts) {
    list.push_back({{"file", a.file}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  }
  doc["artifacts"] = std::move(list);
  return doc;
}

}  // namespace uqs::cli
