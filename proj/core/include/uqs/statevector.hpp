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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "uqs/schedule.hpp"
#include "uqs/unitary.hpp"

namespace uqs {

/// Largest register the statevector engine accepts.
inline constexpr std::size_t kStateVectorCap = 24;

/// 2^N amplitudes; bit q of a basis index is the state of qubit q.
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(std::size_t n_qubits = 1);
  static StateVector basis(std::size_t n_qubits, std::size_t index);
  /// Throws NumericError unless the vector has unit norm within 1e-9.
  static StateVector from_amplitudes(std::size_t n_qubits, Eigen::VectorXcd amplitudes);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amp_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }
  std::complex<double> operator[](std::size_t k) const { return amp_(static_cast<Eigen::Index>(k)); }

  double norm() const { return amp_.norm(); }
  /// <this|other>.
  std::complex<double> inner(const StateVector& other) const;

  /// Header (qubits, endianness, norm) and one "index real imag" line per
  /// amplitude with magnitude above 1e-15.
  std::string dump() const;
  static StateVector parse_dump(std::string_view text);

  friend bool operator==(const StateVector& a, const StateVector& b) {
    return a.n_qubits_ == b.n_qubits_ && a.amp_ == b.amp_;
  }

 private:
  std::size_t n_qubits_;
  Eigen::VectorXcd amp_;
};

/// Fractional timing jitter: each intended rotation angle theta becomes
/// theta (1 + delta) with delta uniform on [-eta, +eta].
struct ErrorModel {
  double eta_local = 0.0;
  double eta_int = 0.0;
  std::optional<std::uint64_t> seed;

  bool active() const { return eta_local > 0.0 || eta_int > 0.0; }
  /// Throws InvalidArgument unless 0 <= eta < 1.
  void validate() const;
};

/// Source of jitter draws. Seeded mode uses mt19937_64, maps a draw x to
/// u = (x >> 11) 2^-53 and returns delta = eta (2u - 1). Replay mode returns a
/// recorded delta stream instead.
class JitterSource {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64; u=(x>>11)*2^-53; delta=eta*(2u-1)";

  explicit JitterSource(std::uint64_t seed);
  static JitterSource replay(std::vector<double> deltas);

  double draw(double eta);
  bool exhausted() const { return replaying_ && next_ >= stream_.size(); }

 private:
  JitterSource() = default;

  std::mt19937_64 engine_;
  bool replaying_ = false;
  std::vector<double> stream_;
  std::size_t next_ = 0;
};

struct InstructionRecord {
  /// Position in the flattened instruction stream.
  std::size_t index = 0;
  /// 'L' for a local layer (one delta per qubit), 'G' for a raw gate.
  char kind = 'G';
  std::vector<double> deltas;
};

/// Per-instruction jitter draws of one execution, sufficient to replay it.
struct ExecutionLog {
  std::string algorithm = JitterSource::kAlgorithm;
  std::optional<std::uint64_t> seed;
  double eta_local = 0.0;
  double eta_int = 0.0;
  std::vector<InstructionRecord> records;

  std::vector<double> delta_stream() const;
  std::string to_text() const;
  static ExecutionLog parse(std::string_view text);
};

struct ExecutionOptions {
  /// Worker threads for amplitude sweeps; results do not depend on it.
  std::size_t threads = 1;
};

/// One (a, b, theta) factor exp(-i theta Z_a Z_b).
struct ZZGate {
  std::size_t a = 0;
  std::size_t b = 0;
  double theta = 0.0;
};

void apply_single_qubit(StateVector& state, std::size_t qubit, const Mat2& u,
                        const ExecutionOptions& options = {});

/// Applies every qubit's unitary. With an error model each unitary's rotation
/// angle is stretched by an independent draw per qubit; draws are appended to
/// `deltas` when given.
void apply_local_layer(StateVector& state, const LocalLayer& layer, const ErrorModel* err = nullptr,
                       JitterSource* jitter = nullptr, std::vector<double>* deltas = nullptr,
                       const ExecutionOptions& options = {});

/// Diagonal phases; with an error model each gate's angle gets its own draw.
void apply_zz_gates(StateVector& state, std::span<const ZZGate> gates, const ErrorModel* err = nullptr,
                    JitterSource* jitter = nullptr, std::vector<double>* deltas = nullptr,
                    const ExecutionOptions& options = {});

/// Runs instruction lists in order, drawing jitter sequentially and checking
/// the norm after every batch.
class Executor {
 public:
  /// Noise-free execution.
  explicit Executor(ExecutionOptions options = {});
  /// Seeded execution; throws InvalidArgument when the model is active but
  /// has no seed.
  Executor(const ErrorModel& err, ExecutionOptions options = {});
  /// Replays the draws stored in a log.
  static Executor replay(const ExecutionLog& log, ExecutionOptions options = {});

  /// Records draws into `log` (may be null to disable recording).
  void record_to(ExecutionLog* log);

  void run(StateVector& state, std::span<const Instruction> instructions);
  void run(StateVector& state, const PulseSchedule& schedule);

 private:
  void execute(StateVector& state, const Instruction& ins);

  ErrorModel err_;
  std::optional<JitterSource> jitter_;
  ExecutionOptions options_;
  ExecutionLog* log_ = nullptr;
  std::size_t counter_ = 0;
};

/// Convenience wrapper: executes `schedule` and returns the log.
ExecutionLog run_schedule(StateVector& state, const PulseSchedule& schedule, const ErrorModel* err = nullptr,
                          const ExecutionOptions& options = {});

/// Dense unitary of a noise-free schedule, built column by column.
Eigen::MatrixXcd schedule_unitary(const PulseSchedule& schedule);

/// <psi| P |psi> for a Pauli string (its coefficient is ignored).
double expectation(const StateVector& state, const PauliString& p);

}  // namespace uqs
