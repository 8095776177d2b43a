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

// End-to-end checks of the uqs executable: exit codes, artifacts, manifests.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"
#include "uqs/compiler.hpp"
#include "uqs/config.hpp"
#include "uqs/hardware.hpp"
#include "uqs/schedule.hpp"
#include "uqs/statevector.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = UQS_CONFIG_DIR;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("uqs_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args) const {
    const std::string cmd = std::string("\"") + UQS_CLI_PATH + "\" " + args + " > \"" + (dir_ / "stdout").string() +
                            "\" 2> \"" + (dir_ / "stderr").string() + "\"";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(dir_ / "stdout");
    r.err = slurp(dir_ / "stderr");
    return r;
  }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }

  /// Rows of a CSV file, header included, split on commas.
  static std::vector<std::vector<std::string>> csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::string cell;
      std::istringstream ls(line);
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (!line.empty() && line.back() == ',') cells.emplace_back();
      rows.push_back(cells);
    }
    return rows;
  }

  fs::path dir_;
};

std::string config(const std::string& name) { return "--config \"" + (kConfigs / name).string() + "\""; }

/// Minimal XML well-formedness check: balanced tags, quoted attributes and
/// only the predefined entities.
bool well_formed_xml(const std::string& s, std::string* why) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  bool root_seen = false;
  const auto fail = [&](const std::string& w) {
    *why = w + " at offset " + std::to_string(i);
    return false;
  };
  const auto check_entities = [&](std::string_view text) {
    for (std::size_t k = text.find('&'); k != std::string_view::npos; k = text.find('&', k + 1)) {
      const auto semi = text.find(';', k);
      if (semi == std::string_view::npos) return false;
      const auto ent = text.substr(k, semi - k + 1);
      if (ent != "&amp;" && ent != "&lt;" && ent != "&gt;" && ent != "&quot;" && ent != "&apos;") return false;
    }
    return true;
  };
  while (i < s.size()) {
    const std::size_t lt = s.find('<', i);
    if (!check_entities(std::string_view(s).substr(i, (lt == std::string::npos ? s.size() : lt) - i))) {
      return fail("bad entity in text");
    }
    if (lt == std::string::npos) break;
    if (stack.empty() && root_seen) {
      if (s.find_first_not_of(" \n\r\t", lt) != lt) break;
      return fail("content after the root element");
    }
    i = lt;
    if (s.compare(i, 5, "<?xml") == 0) {
      const auto end = s.find("?>", i);
      if (end == std::string::npos) return fail("unterminated declaration");
      i = end + 2;
      continue;
    }
    const auto gt = s.find('>', i);
    if (gt == std::string::npos) return fail("unterminated tag");
    std::string tag = s.substr(i + 1, gt - i - 1);
    i = gt + 1;
    if (!tag.empty() && tag[0] == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return fail("mismatched closing tag " + name);
      stack.pop_back();
      continue;
    }
    const bool self_closing = !tag.empty() && tag.back() == '/';
    if (self_closing) tag.pop_back();
    const auto name_end = tag.find_first_of(" \n\t");
    const std::string name = tag.substr(0, name_end);
    if (name.empty()) return fail("empty tag name");
    // Attributes: name="value" pairs separated by whitespace.
    std::size_t k = name_end == std::string::npos ? tag.size() : name_end;
    while (k < tag.size()) {
      k = tag.find_first_not_of(" \n\t", k);
      if (k == std::string::npos) break;
      const auto eq = tag.find('=', k);
      if (eq == std::string::npos || eq + 1 >= tag.size() || tag[eq + 1] != '"') return fail("unquoted attribute");
      const auto close = tag.find('"', eq + 2);
      if (close == std::string::npos) return fail("unterminated attribute");
      const std::string value = tag.substr(eq + 2, close - eq - 2);
      if (value.find('<') != std::string::npos || !check_entities(value)) return fail("bad attribute value");
      k = close + 1;
    }
    if (stack.empty()) {
      if (root_seen) return fail("second root element");
      root_seen = true;
    }
    if (!self_closing) stack.push_back(name);
  }
  if (!stack.empty()) return fail("unclosed element " + stack.back());
  if (!root_seen) return fail("no root element");
  return true;
}

std::string sha256sum(const fs::path& p) {
  const std::string cmd = "sha256sum \"" + p.string() + "\"";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::array<char, 128> buf{};
  std::string out;
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  pclose(pipe);
  return out.substr(0, out.find(' '));
}

}  // namespace

TEST(CliXmlChecker, RejectsMalformedDocuments) {
  std::string why;
  EXPECT_TRUE(well_formed_xml("<?xml version=\"1.0\"?>\n<a x=\"1\"><b/>t &amp; u</a>\n", &why)) << why;
  EXPECT_FALSE(well_formed_xml("<a><b></a></b>", &why));
  EXPECT_FALSE(well_formed_xml("<a x=1/>", &why));
  EXPECT_FALSE(well_formed_xml("<a>AT&T</a>", &why));
  EXPECT_FALSE(well_formed_xml("<a/><b/>", &why));
}

TEST_F(Cli, CompileHeisenbergChainMatchesLibraryAndRoundTrips) {
  const auto r = run("compile " + config("heisenberg_chain.cfg") + " --out-dir \"" + dir_.string() + "/o\"");
  ASSERT_EQ(r.code, 0) << r.err;
  // Bond coupling J/2 = 1 on XX, YY and ZZ with |gamma| = 1 costs 3 per cycle.
  const auto cost = uqs::CostReport::parse(slurp(dir_ / "o/cost.txt"));
  EXPECT_DOUBLE_EQ(cost.time_cost, 3.0);
  EXPECT_EQ(cost.n_controls, 3u);
  EXPECT_NE(r.out.find("local layers per cycle = 3"), std::string::npos) << r.out;

  const auto parsed = uqs::PulseSchedule::parse(slurp(dir_ / "o/schedule.txt"));
  const auto cfg = uqs::ConfigFile::load(kConfigs / "heisenberg_chain.cfg");
  const auto hw = uqs::parse_hardware(cfg);
  auto expected = uqs::trotter_schedule(uqs::parse_model(cfg, "model"), 1.0, 0.01, hw);
  auto realized = uqs::realize_schedule(expected.schedule, hw);
  realized.cost = expected.cost;
  EXPECT_TRUE(uqs::schedules_equal(parsed, realized, 0.0));
  EXPECT_EQ(parsed.to_text(), slurp(dir_ / "o/schedule.txt"));

  const auto doc = nlohmann::json::parse(slurp(dir_ / "o/compiled.json"));
  EXPECT_EQ(doc["cost"]["n_controls"], 3);
  EXPECT_EQ(doc["schedule"]["repetitions"], cost.gate_count);
  EXPECT_EQ(doc["schedule"]["cycle"].size(), parsed.cycle.size());
}

TEST_F(Cli, SignMismatchIsInfeasible) {
  const auto r = run("compile " + config("heisenberg_infeasible.cfg") + " --out-dir \"" + dir_.string() + "\"");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("sign of gamma"), std::string::npos) << r.err;
  EXPECT_EQ(run("cost " + config("heisenberg_infeasible.cfg") + " --out-dir \"" + dir_.string() + "\"").code, 2);
}

TEST_F(Cli, EmptyHamiltonianGivesEmptySchedule) {
  const auto r = run("compile " + config("empty.cfg") + " --out-dir \"" + dir_.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto s = uqs::PulseSchedule::parse(slurp(dir_ / "schedule.txt"));
  EXPECT_EQ(s.instruction_count(), 0u);
  EXPECT_EQ(uqs::CostReport::parse(slurp(dir_ / "cost.txt")).time_cost, 0.0);
}

TEST_F(Cli, AntisymmetricCost) {
  const auto r = run("cost " + config("antisymmetric.cfg") + " --out-dir \"" + dir_.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(dir_ / "cost.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "time_cost");
  EXPECT_DOUBLE_EQ(std::stod(rows[1][0]), 2 * 0.5 / 1.0);
  const auto pairs = csv(dir_ / "pairs.csv");
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[1][2], "0");  // not symmetric
  EXPECT_DOUBLE_EQ(std::stod(pairs[1][5]), 1.0);
}

TEST_F(Cli, CrosstalkRatios) {
  const auto r = run("crosstalk " + config("crosstalk_chain.cfg") + " --out-dir \"" + dir_.string() + "/far\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto far = csv(dir_ / "far/crosstalk_summary.csv");
  // Nearest parasitic pair is 10 sites apart while each intended pair is 1 apart.
  EXPECT_NEAR(std::stod(far[1][1]), 1.0 / 1000.0, 1e-15);

  const auto single = write("single.cfg", "[hardware]\nplatform = uqs2\nions = 4\n[crosstalk]\ngroups = 1 2\n");
  ASSERT_EQ(run("crosstalk --config \"" + single.string() + "\" --out-dir \"" + dir_.string() + "/one\"").code, 0);
  const auto one = csv(dir_ / "one/crosstalk_summary.csv");
  EXPECT_EQ(std::stod(one[1][1]), 0.0);
  EXPECT_EQ(one[1][3], "1");
}

TEST_F(Cli, SimulateOracleWithinBound) {
  const auto r = run("simulate " + config("zz_pair.cfg") + " --oracle --out-dir \"" + dir_.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("oracle fidelity"), std::string::npos);
  const auto rows = csv(dir_ / "oracle.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_GE(std::stod(rows[1][0]), 1.0 - 2 * 0.01);
  const auto obs = csv(dir_ / "observables.csv");
  EXPECT_EQ(obs[0], (std::vector<std::string>{"observable", "value"}));
  EXPECT_EQ(obs.size(), 6u);
  // Z1 commutes with every term of the model, so it stays at +1 from |000>.
  EXPECT_NEAR(std::stod(obs[2][1]), 1.0, 1e-12);
}

TEST_F(Cli, IdentityScheduleLeavesStateUnchanged) {
  const auto input = uqs::StateVector::basis(3, 5).dump();
  write("in.txt", input);
  write("id.sched", "QUBITS 3\nREPEAT 1\n");
  const auto cfg = write("id.cfg", "[simulate]\nschedule = id.sched\ninitial_state = in.txt\n");
  const auto r = run("simulate --config \"" + cfg.string() + "\" --out-dir \"" + dir_.string() + "/o\"");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir_ / "o/state.txt"), input);
}

TEST_F(Cli, ErrorModelWithoutSeedIsRefused) {
  write("id.sched", "QUBITS 2\nREPEAT 1\nGATE K1 0.1 0-1:1\n");
  const auto cfg = write("noisy.cfg", "[simulate]\nschedule = id.sched\n[errors]\neta = 0.01\n");
  EXPECT_EQ(run("simulate --config \"" + cfg.string() + "\" --out-dir \"" + dir_.string() + "\"").code, 3);
  EXPECT_EQ(run("simulate --config \"" + cfg.string() + "\" --seed 7 --out-dir \"" + dir_.string() + "\"").code, 0);

  const auto adiabatic = write("a.cfg",
                               "[hardware]\nplatform = uqs1\nsites = 3\navailable_j = all\n"
                               "[initial]\nname = neighbor\nsites = 3\npauli = Z\n[target]\nname = dipole\nsites = 3\n"
                               "[adiabatic]\nsteps = 5\ntheta1 = 0.1\n[errors]\neta = 0.01\n");
  const auto r = run("adiabatic --config \"" + adiabatic.string() + "\" --out-dir \"" + dir_.string() + "\"");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("seed"), std::string::npos);
}

TEST_F(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("compile").code, 1);
  EXPECT_EQ(run("compile --config /nonexistent/x.cfg").code, 1);
  const auto bad = write("bad.cfg", "[hardware]\nplatform = uqs1\nsites = three\navailable_j = 1\n[model]\nname = ising\nsites = 3\n");
  const auto r = run("compile --config \"" + bad.string() + "\" --out-dir \"" + dir_.string() + "\"");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 3, column 9"), std::string::npos) << r.err;
  const auto unknown = write("unknown.cfg", "[hardwre]\nplatform = uqs1\n");
  EXPECT_EQ(run("compile --config \"" + unknown.string() + "\" --out-dir \"" + dir_.string() + "\"").code, 3);
  const auto version = write("version.cfg", "version = 2\n[hardware]\nplatform = uqs1\n");
  EXPECT_EQ(run("compile --config \"" + version.string() + "\" --out-dir \"" + dir_.string() + "\"").code, 3);
}

TEST_F(Cli, AdiabaticTrajectoryAndPlots) {
  const auto r = run("adiabatic " + config("fig4a.cfg") + " --out-dir \"" + dir_.string() + "/a\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto traj = csv(dir_ / "a/trajectory.csv");
  ASSERT_EQ(traj.size(), 101u);
  EXPECT_EQ(traj[0], (std::vector<std::string>{"step", "k", "fidelity", "energy", "ground_energy"}));
  EXPECT_EQ(traj[100][0], "100");
  EXPECT_EQ(std::stod(traj[100][1]), 0.0);
  const auto hist = csv(dir_ / "a/histogram.csv");
  EXPECT_EQ(hist[0], (std::vector<std::string>{"level", "energy", "degeneracy", "weight"}));
  double total = 0.0;
  for (std::size_t i = 1; i < hist.size(); ++i) total += std::stod(hist[i][3]);
  EXPECT_NEAR(total, 1.0, 1e-9);

  for (const char* svg : {"a/trajectory.svg", "a/histogram.svg"}) {
    const std::string text = slurp(dir_ / svg);
    std::string why;
    EXPECT_TRUE(well_formed_xml(text, &why)) << svg << ": " << why;
    EXPECT_NE(text.find("viewBox=\"0 0 800 600\""), std::string::npos);
  }

  ASSERT_EQ(run("adiabatic " + config("fig4a.cfg") + " --steps 1 --out-dir \"" + dir_.string() + "/one\"").code, 0);
  EXPECT_EQ(csv(dir_ / "one/trajectory.csv").size(), 2u);
  std::string why;
  EXPECT_TRUE(well_formed_xml(slurp(dir_ / "one/trajectory.svg"), &why)) << why;
}

TEST_F(Cli, LongRunConcentratesInLowestLevels) {
  const auto r = run("adiabatic " + config("fig5.cfg") + " --out-dir \"" + dir_.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto hist = csv(dir_ / "histogram.csv");
  ASSERT_GT(hist.size(), 3u);
  double ground = std::stod(hist[1][3]), low = ground + std::stod(hist[2][3]) + std::stod(hist[3][3]);
  for (std::size_t i = 2; i < hist.size(); ++i) EXPECT_LT(std::stod(hist[i][3]), ground);
  EXPECT_GT(low, 0.75);
}

TEST_F(Cli, SweepTablesInJson) {
  const auto r = run("adiabatic " + config("fig4b.cfg") + " --format json --out-dir \"" + dir_.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = nlohmann::json::parse(slurp(dir_ / "sweep.json"));
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i]["mean"], rows[i - 1]["mean"]);
  const auto samples = nlohmann::json::parse(slurp(dir_ / "sweep_samples.json"));
  EXPECT_EQ(samples.size(), 100u);
  EXPECT_EQ(samples[21]["seed"], 2);
}

TEST_F(Cli, ManifestHashesAreReproducible) {
  const std::string args = " --single-thread --seed 11";
  ASSERT_EQ(run("adiabatic " + config("fig4a.cfg") + args + " --out-dir \"" + dir_.string() + "/r1\"").code, 0);
  ASSERT_EQ(run("adiabatic " + config("fig4a.cfg") + args + " --out-dir \"" + dir_.string() + "/r2\"").code, 0);
  auto m1 = nlohmann::json::parse(slurp(dir_ / "r1/manifest.json"));
  auto m2 = nlohmann::json::parse(slurp(dir_ / "r2/manifest.json"));
  EXPECT_EQ(m1["config_dialect"], uqs::kConfigDialect);
  EXPECT_EQ(m1["seed"], 11);
  EXPECT_EQ(m1["artifacts"], m2["artifacts"]);
  ASSERT_EQ(m1["artifacts"].size(), 6u);
  for (const auto& a : m1["artifacts"]) {
    const fs::path file = dir_ / "r1" / a["file"].get<std::string>();
    EXPECT_EQ(a["sha256"], sha256sum(file)) << file;
    EXPECT_EQ(a["bytes"], fs::file_size(file));
  }
  // More threads change the schedule of the work, not the results.
  ASSERT_EQ(run("adiabatic " + config("fig4a.cfg") + " --jobs 3 --seed 11 --out-dir \"" + dir_.string() + "/r3\"").code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir_ / "r3/manifest.json"))["artifacts"], m1["artifacts"]);
}
