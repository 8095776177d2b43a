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

#include "uqs/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "uqs/errors.hpp"
#include "uqs/spectrum.hpp"

namespace uqs {

namespace {

using Complex = std::complex<double>;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Splits [0, count) into contiguous chunks, one per worker. Each index is
// touched by exactly one worker so results do not depend on the split.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  constexpr std::size_t kMinPerThread = std::size_t{1} << 14;
  const std::size_t workers = std::clamp<std::size_t>(std::min(threads, count / kMinPerThread), 1, 64);
  if (workers <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  fn(std::size_t{0}, std::min(count, chunk));
}

void check_norm(const StateVector& s) {
  const double n = s.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-9) {
    throw NumericError("state norm drifted to " + format_double(n));
  }
}

std::uint64_t parse_u64(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, 1, "expected an unsigned integer, got '" + tok + "'");
  }
}

double parse_real(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, 1, "expected a number, got '" + tok + "'");
  }
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0 || n_qubits > kStateVectorCap) {
    throw InvalidArgument("statevector size must be between 1 and " + std::to_string(kStateVectorCap) + " qubits");
  }
  amp_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  amp_(0) = 1.0;
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw InvalidArgument("basis index out of range");
  s.amp_(0) = 0.0;
  s.amp_(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::size_t n_qubits, Eigen::VectorXcd amplitudes) {
  StateVector s(n_qubits);
  if (static_cast<std::size_t>(amplitudes.size()) != s.dim()) {
    throw InvalidArgument("amplitude vector has the wrong length for " + std::to_string(n_qubits) + " qubits");
  }
  s.amp_ = std::move(amplitudes);
  check_norm(s);
  return s;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.n_qubits_ != n_qubits_) throw InvalidArgument("inner product of states of different sizes");
  return amp_.dot(other.amp_);
}

std::string StateVector::dump() const {
  std::ostringstream out;
  out << "# uqs-state v1\n";
  out << "QUBITS " << n_qubits_ << "\n";
  out << "ENDIAN little\n";
  out << "NORM " << format_double(norm()) << "\n";
  for (Eigen::Index k = 0; k < amp_.size(); ++k) {
    if (std::abs(amp_(k)) > 1e-15) {
      out << k << ' ' << format_double(amp_(k).real()) << ' ' << format_double(amp_(k).imag()) << '\n';
    }
  }
  return out.str();
}

StateVector StateVector::parse_dump(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::optional<std::size_t> n;
  Eigen::VectorXcd amp;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto words = split_words(line);
    if (words.empty() || words[0][0] == '#') continue;
    if (words[0] == "QUBITS") {
      if (words.size() != 2) throw ParseError(lineno, 1, "QUBITS takes one value");
      n = parse_u64(words[1], lineno);
      if (*n == 0 || *n > kStateVectorCap) throw ParseError(lineno, 8, "unsupported qubit count");
      amp = Eigen::VectorXcd::Zero(Eigen::Index{1} << *n);
    } else if (words[0] == "ENDIAN") {
      if (words.size() != 2 || words[1] != "little") throw ParseError(lineno, 1, "only little-endian dumps are supported");
    } else if (words[0] == "NORM") {
      continue;
    } else {
      if (!n) throw ParseError(lineno, 1, "amplitude before QUBITS");
      if (words.size() != 3) throw ParseError(lineno, 1, "expected 'index real imag'");
      const std::uint64_t k = parse_u64(words[0], lineno);
      if (k >= static_cast<std::uint64_t>(amp.size())) throw ParseError(lineno, 1, "amplitude index out of range");
      amp(static_cast<Eigen::Index>(k)) = Complex(parse_real(words[1], lineno), parse_real(words[2], lineno));
    }
  }
  if (!n) throw ParseError(lineno, 1, "missing QUBITS line");
  return from_amplitudes(*n, std::move(amp));
}

// ---------------------------------------------------------------------------
// Errors and jitter

void ErrorModel::validate() const {
  for (double eta : {eta_local, eta_int}) {
    if (!std::isfinite(eta) || eta < 0.0 || eta >= 1.0) {
      throw InvalidArgument("error amplitude must lie in [0, 1), got " + format_double(eta));
    }
  }
}

JitterSource::JitterSource(std::uint64_t seed) : engine_(seed) {}

JitterSource JitterSource::replay(std::vector<double> deltas) {
  JitterSource j;
  j.replaying_ = true;
  j.stream_ = std::move(deltas);
  return j;
}

double JitterSource::draw(double eta) {
  if (replaying_) {
    if (next_ >= stream_.size()) throw InvalidArgument("replay log ran out of recorded draws");
    return stream_[next_++];
  }
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return eta * (2.0 * u - 1.0);
}

std::vector<double> ExecutionLog::delta_stream() const {
  std::vector<double> out;
  for (const auto& r : records) out.insert(out.end(), r.deltas.begin(), r.deltas.end());
  return out;
}

std::string ExecutionLog::to_text() const {
  std::ostringstream out;
  out << "# uqs-execution-log v1\n";
  out << "ALGORITHM " << algorithm << "\n";
  out << "SEED " << (seed ? std::to_string(*seed) : std::string("none")) << "\n";
  out << "ETA_LOCAL " << format_double(eta_local) << "\n";
  out << "ETA_INT " << format_double(eta_int) << "\n";
  for (const auto& r : records) {
    out << r.kind << ' ' << r.index;
    for (double d : r.deltas) out << ' ' << format_double(d);
    out << '\n';
  }
  return out.str();
}

ExecutionLog ExecutionLog::parse(std::string_view text) {
  ExecutionLog log;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("ALGORITHM ", 0) == 0) {
      log.algorithm = line.substr(10);
      continue;
    }
    const auto words = split_words(line);
    if (words.empty()) continue;
    const std::string& key = words[0];
    if (key == "SEED" && words.size() == 2) {
      log.seed = words[1] == "none" ? std::nullopt : std::optional<std::uint64_t>(parse_u64(words[1], lineno));
    } else if (key == "ETA_LOCAL" && words.size() == 2) {
      log.eta_local = parse_real(words[1], lineno);
    } else if (key == "ETA_INT" && words.size() == 2) {
      log.eta_int = parse_real(words[1], lineno);
    } else if ((key == "L" || key == "G") && words.size() >= 2) {
      InstructionRecord r;
      r.kind = key[0];
      r.index = parse_u64(words[1], lineno);
      for (std::size_t i = 2; i < words.size(); ++i) r.deltas.push_back(parse_real(words[i], lineno));
      log.records.push_back(std::move(r));
    } else {
      throw ParseError(lineno, 1, "unrecognized log line '" + line + "'");
    }
  }
  return log;
}

// ---------------------------------------------------------------------------
// Kernels

void apply_single_qubit(StateVector& state, std::size_t qubit, const Mat2& u, const ExecutionOptions& options) {
  if (qubit >= state.n_qubits()) throw InvalidArgument("qubit index out of range");
  Complex* a = state.amplitudes().data();
  const std::size_t bit = std::size_t{1} << qubit;
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  // Pair index p enumerates basis states with the target bit cleared.
  parallel_for(state.dim() / 2, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const std::size_t i0 = ((p & ~(bit - 1)) << 1) | (p & (bit - 1));
      const std::size_t i1 = i0 | bit;
      const Complex x0 = a[i0], x1 = a[i1];
      a[i0] = u00 * x0 + u01 * x1;
      a[i1] = u10 * x0 + u11 * x1;
    }
  });
}

void apply_local_layer(StateVector& state, const LocalLayer& layer, const ErrorModel* err, JitterSource* jitter,
                       std::vector<double>* deltas, const ExecutionOptions& options) {
  layer.check_size(state.n_qubits());
  const bool noisy = err != nullptr && err->eta_local > 0.0;
  if (noisy && jitter == nullptr) throw InvalidArgument("apply_local_layer: error model without a jitter source");
  for (std::size_t q = 0; q < state.n_qubits(); ++q) {
    const SingleQubitUnitary& u = layer.on(q);
    if (noisy) {
      const double delta = jitter->draw(err->eta_local);
      if (deltas) deltas->push_back(delta);
      if (!u.is_identity(0.0)) apply_single_qubit(state, q, u.stretched(1.0 + delta).matrix(), options);
    } else if (!u.is_identity(0.0)) {
      apply_single_qubit(state, q, u.matrix(), options);
    }
  }
}

void apply_zz_gates(StateVector& state, std::span<const ZZGate> gates, const ErrorModel* err, JitterSource* jitter,
                    std::vector<double>* deltas, const ExecutionOptions& options) {
  const bool noisy = err != nullptr && err->eta_int > 0.0;
  if (noisy && jitter == nullptr) throw InvalidArgument("apply_zz_gates: error model without a jitter source");
  struct Term {
    std::size_t mask;
    double theta;
  };
  std::vector<Term> terms;
  terms.reserve(gates.size());
  for (const auto& g : gates) {
    if (g.a >= state.n_qubits() || g.b >= state.n_qubits() || g.a == g.b) {
      throw InvalidArgument("ZZ gate on an invalid qubit pair");
    }
    double theta = g.theta;
    if (noisy) {
      const double delta = jitter->draw(err->eta_int);
      if (deltas) deltas->push_back(delta);
      theta *= 1.0 + delta;
    }
    terms.push_back({(std::size_t{1} << g.a) | (std::size_t{1} << g.b), theta});
  }
  if (terms.empty()) return;
  Complex* a = state.amplitudes().data();
  parallel_for(state.dim(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      double phase = 0.0;
      for (const auto& t : terms) {
        // Z_a Z_b is +1 when the two bits agree.
        phase += (std::popcount(k & t.mask) & 1) ? t.theta : -t.theta;
      }
      a[k] *= Complex(std::cos(phase), std::sin(phase));
    }
  });
}

// ---------------------------------------------------------------------------
// Executor

Executor::Executor(ExecutionOptions options) : options_(options) {}

Executor::Executor(const ErrorModel& err, ExecutionOptions options) : err_(err), options_(options) {
  err_.validate();
  if (err_.active()) {
    if (!err_.seed) throw InvalidArgument("an active error model requires a seed");
    jitter_.emplace(*err_.seed);
  }
}

Executor Executor::replay(const ExecutionLog& log, ExecutionOptions options) {
  Executor ex(options);
  ex.err_ = ErrorModel{log.eta_local, log.eta_int, log.seed};
  ex.err_.validate();
  if (ex.err_.active()) ex.jitter_ = JitterSource::replay(log.delta_stream());
  return ex;
}

void Executor::record_to(ExecutionLog* log) {
  log_ = log;
  if (log_) {
    log_->seed = err_.seed;
    log_->eta_local = err_.eta_local;
    log_->eta_int = err_.eta_int;
  }
}

void Executor::execute(StateVector& state, const Instruction& ins) {
  const ErrorModel* err = jitter_ ? &err_ : nullptr;
  JitterSource* jitter = jitter_ ? &*jitter_ : nullptr;
  InstructionRecord rec;
  rec.index = counter_++;
  if (const auto* local = std::get_if<ApplyLocal>(&ins)) {
    rec.kind = 'L';
    apply_local_layer(state, local->layer, err, jitter, &rec.deltas, options_);
  } else {
    const auto& gate = std::get<RawGate>(ins);
    rec.kind = 'G';
    double factor = 1.0;
    if (err != nullptr && err_.eta_int > 0.0) {
      const double delta = jitter->draw(err_.eta_int);
      rec.deltas.push_back(delta);
      factor += delta;
    }
    std::vector<ZZGate> zz;
    zz.reserve(gate.targets.size());
    for (const auto& t : gate.targets) zz.push_back({t.a, t.b, gate.theta * t.weight * factor});
    apply_zz_gates(state, zz, nullptr, nullptr, nullptr, options_);
  }
  check_norm(state);
  if (log_ && !rec.deltas.empty()) log_->records.push_back(std::move(rec));
}

void Executor::run(StateVector& state, std::span<const Instruction> instructions) {
  for (const auto& ins : instructions) execute(state, ins);
}

void Executor::run(StateVector& state, const PulseSchedule& schedule) {
  if (schedule.n_qubits != state.n_qubits()) {
    throw InvalidArgument("schedule acts on " + std::to_string(schedule.n_qubits) + " qubits, state has " +
                          std::to_string(state.n_qubits()));
  }
  for (std::size_t r = 0; r < schedule.repetitions; ++r) run(state, std::span<const Instruction>(schedule.cycle));
}

ExecutionLog run_schedule(StateVector& state, const PulseSchedule& schedule, const ErrorModel* err,
                          const ExecutionOptions& options) {
  Executor ex = err ? Executor(*err, options) : Executor(options);
  ExecutionLog log;
  ex.record_to(&log);
  ex.run(state, schedule);
  return log;
}

Eigen::MatrixXcd schedule_unitary(const PulseSchedule& schedule) {
  check_dense_size(schedule.n_qubits);
  const std::size_t dim = std::size_t{1} << schedule.n_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    StateVector s = StateVector::basis(schedule.n_qubits, k);
    Executor ex;
    ex.run(s, schedule);
    u.col(static_cast<Eigen::Index>(k)) = s.amplitudes();
  }
  return u;
}

double expectation(const StateVector& state, const PauliString& p) {
  if (p.size() != state.n_qubits()) throw InvalidArgument("Pauli string size does not match the state");
  std::size_t xmask = 0, zmask = 0;
  int n_y = 0;
  for (std::size_t q = 0; q < p.size(); ++q) {
    const Pauli op = p[q];
    if (op == Pauli::X || op == Pauli::Y) xmask |= std::size_t{1} << q;
    if (op == Pauli::Z || op == Pauli::Y) zmask |= std::size_t{1} << q;
    if (op == Pauli::Y) ++n_y;
  }
  // P|k> = i^{#Y} (-1)^{|k & zmask|} |k ^ xmask>.
  static const Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex global = kPowers[n_y % 4];
  const auto& a = state.amplitudes();
  Complex acc = 0.0;
  for (std::size_t k = 0; k < state.dim(); ++k) {
    const double sign = (std::popcount(k & zmask) & 1) ? -1.0 : 1.0;
    acc += std::conj(a(static_cast<Eigen::Index>(k ^ xmask))) * sign * a(static_cast<Eigen::Index>(k));
  }
  return (global * acc).real();
}

}  // namespace uqs
