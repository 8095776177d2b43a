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

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "uqs/config.hpp"
#include "uqs/errors.hpp"

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInfeasible = 2;
constexpr int kPolicy = 3;
constexpr int kNumeric = 4;

constexpr const char* kFooter = R"(
Configuration files use the uqs-ini/1 dialect ([section] headers, key = value
lines, '#' or ';' comments). Every run writes manifest.json with SHA-256
hashes of all outputs.

Output tables (.csv with --format csv, .json arrays with --format json):
  compile    schedule.txt, cost.txt, compiled.json
  simulate   state.txt, log.txt
             observables: observable,value
             oracle:      fidelity,bound,within_bound      (with --oracle)
  adiabatic  trajectory:  step,k,fidelity,energy,ground_energy
             histogram:   level,energy,degeneracy,weight
             trajectory.svg, histogram.svg, final_state.txt, log.txt
             with a [sweep] section instead:
             sweep:         steps,eta,repetitions,mean,stddev,stderr
             sweep_samples: steps,eta,repetition,seed,final_ground_weight
             sweep.svg
  cost       cost.txt
             cost:   time_cost,n_controls,gate_count,step_t,chi,epsilon,t_prime
             pairs:  a,b,symmetric,homogeneous_feasible,homogeneous_cost,inhomogeneous_cost
             groups: gate_id,pairs,time_scale,frames
  crosstalk  crosstalk:         group_a,group_b,a,b,ratio
             crosstalk_summary: groups,worst,threshold,concurrent

Exit codes: 0 success, 1 usage or parse error, 2 infeasible target,
3 configuration policy violation, 4 numerical failure.
Environment: UQS_DENSE_CAP overrides the largest register (default 12 qubits)
used for exact diagonalization.)";

}  // namespace

int main(int argc, char** argv) {
  using uqs::cli::RunOptions;
  using uqs::cli::TableFormat;

  CLI::App app{"Compile and simulate spin Hamiltonians on ultracold-atom and trapped-ion quantum simulators"};
  app.footer(kFooter);
  app.require_subcommand(1);

  RunOptions opts;
  std::size_t steps = 0;
  const std::map<std::string, TableFormat> formats{{"csv", TableFormat::csv}, {"json", TableFormat::json}};

  using Command = int (*)(const RunOptions&, std::ostream&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"compile", "Compile a Hamiltonian into a pulse schedule and cost report", uqs::cli::cmd_compile},
      {"simulate", "Run a schedule on a statevector and measure observables", uqs::cli::cmd_simulate},
      {"adiabatic", "Adiabatic state preparation run or error sweep", uqs::cli::cmd_adiabatic},
      {"cost", "Time cost and control count of a target without emitting the schedule", uqs::cli::cmd_cost},
      {"crosstalk", "Parasitic coupling between concurrently pushed ion groups", uqs::cli::cmd_crosstalk},
  };
  std::map<CLI::App*, Command> dispatch;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->footer(kFooter);
    sub->add_option("--config", opts.config, "Configuration file (uqs-ini/1)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "Seed for timing-jitter draws (overrides the file)");
    sub->add_option("--jobs", opts.jobs, "Worker threads and parallel sweep runs")->check(CLI::PositiveNumber);
    sub->add_flag("--single-thread", opts.single_thread, "Force one thread regardless of --jobs");
    sub->add_option("--out-dir", opts.out_dir, "Directory for output files")->capture_default_str();
    sub->add_option("--format", opts.format, "Table format: csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    if (name == "simulate") sub->add_flag("--oracle", opts.oracle, "Compare against exact evolution");
    if (name == "adiabatic") sub->add_option("--steps", steps, "Override the number of steps")->check(CLI::PositiveNumber);
    dispatch[sub] = fn;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (steps > 0) opts.steps = steps;

  try {
    for (const auto& [sub, fn] : dispatch) {
      if (sub->parsed()) return fn(opts, std::cout);
    }
  } catch (const uqs::ParseError& e) {
    std::cerr << "error: " << opts.config.string() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const uqs::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const uqs::PolicyError& e) {
    std::cerr << "policy: " << e.what() << "\n";
    return kPolicy;
  } catch (const uqs::InvalidArgument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kPolicy;
  } catch (const uqs::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
