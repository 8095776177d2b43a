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

#include "uqs/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "uqs/errors.hpp"

namespace uqs {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Token {
  std::size_t column;
  std::string text;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    out.push_back({i + 1, std::string(line.substr(i, j - i))});
    i = j;
  }
  return out;
}

double to_double(const Token& t, std::size_t line) {
  char* end = nullptr;
  double v = std::strtod(t.text.c_str(), &end);
  if (end != t.text.c_str() + t.text.size() || !std::isfinite(v)) {
    throw ParseError(line, t.column, "expected a finite number, got '" + t.text + "'");
  }
  return v;
}

std::size_t to_size(const std::string& s, std::size_t line, std::size_t column) {
  char* end = nullptr;
  unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError(line, column, "expected a non-negative integer, got '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

void write_unitary(std::ostringstream& out, const SingleQubitUnitary& u) {
  const Mat2& m = u.matrix();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) out << ' ' << fmt(m(r, c).real()) << ' ' << fmt(m(r, c).imag());
  }
}

SingleQubitUnitary read_unitary(const std::vector<Token>& toks, std::size_t offset,
                                std::size_t line) {
  Mat2 m;
  for (int k = 0; k < 4; ++k) {
    m(k / 2, k % 2) = {to_double(toks[offset + 2 * k], line), to_double(toks[offset + 2 * k + 1], line)};
  }
  try {
    return SingleQubitUnitary(m);
  } catch (const NumericError& e) {
    throw ParseError(line, toks[offset].column, e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// CostReport

std::string CostReport::to_text() const {
  std::ostringstream out;
  out << "time_cost=" << fmt(time_cost) << "\n"
      << "n_controls=" << n_controls << "\n"
      << "gate_count=" << gate_count << "\n"
      << "step_t=" << fmt(step_t) << "\n"
      << "chi=" << fmt(chi) << "\n"
      << "epsilon=" << fmt(epsilon) << "\n"
      << "t_prime=" << fmt(t_prime) << "\n";
  return out.str();
}

CostReport CostReport::parse(std::string_view text) {
  CostReport r;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    for (const auto& tok : tokenize(line)) {
      auto eq = tok.text.find('=');
      if (eq == std::string::npos) throw ParseError(line_no, tok.column, "expected key=value");
      const std::string key = tok.text.substr(0, eq);
      const Token value{tok.column + eq + 1, tok.text.substr(eq + 1)};
      if (key == "time_cost") r.time_cost = to_double(value, line_no);
      else if (key == "n_controls") r.n_controls = to_size(value.text, line_no, value.column);
      else if (key == "gate_count") r.gate_count = to_size(value.text, line_no, value.column);
      else if (key == "step_t") r.step_t = to_double(value, line_no);
      else if (key == "chi") r.chi = to_double(value, line_no);
      else if (key == "epsilon") r.epsilon = to_double(value, line_no);
      else if (key == "t_prime") r.t_prime = to_double(value, line_no);
      else throw ParseError(line_no, tok.column, "unknown cost key '" + key + "'");
    }
  }
  return r;
}

CostReport make_cost_report(double time_cost, std::size_t n_controls, double t_prime,
                            double epsilon, bool has_terms) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be positive");
  if (!(t_prime >= 0.0) || !std::isfinite(t_prime)) throw InvalidArgument("T' must be non-negative");
  if (!(time_cost >= 0.0) || !std::isfinite(time_cost)) throw InvalidArgument("time cost must be non-negative");

  CostReport r;
  r.time_cost = time_cost;
  r.n_controls = n_controls;
  r.epsilon = epsilon;
  r.t_prime = t_prime;
  if (!has_terms) return r;

  const double ratio = time_cost * time_cost * t_prime * t_prime / epsilon;
  // Absorb representation error of the ratio (e.g. 9 / 0.01) before rounding up.
  const double rounded = std::ceil(ratio * (1.0 - 1e-12));
  r.gate_count = std::max<std::size_t>(1, static_cast<std::size_t>(rounded));
  const double total = time_cost * t_prime;
  r.step_t = total / static_cast<double>(r.gate_count);
  r.chi = total > 0.0 ? static_cast<double>(n_controls * r.gate_count) / total : 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// RawGate / PulseSchedule

double RawGate::total_angle() const {
  double s = 0.0;
  for (const auto& t : targets) s += std::abs(theta * t.weight);
  return s;
}

std::size_t PulseSchedule::local_layer_count() const {
  return repetitions * static_cast<std::size_t>(std::count_if(cycle.begin(), cycle.end(), [](const Instruction& i) {
           return std::holds_alternative<ApplyLocal>(i);
         }));
}

std::size_t PulseSchedule::raw_gate_count() const {
  return repetitions * static_cast<std::size_t>(std::count_if(cycle.begin(), cycle.end(), [](const Instruction& i) {
           return std::holds_alternative<RawGate>(i);
         }));
}

std::map<std::string, double> PulseSchedule::angle_by_family() const {
  std::map<std::string, double> out;
  for (const auto& ins : cycle) {
    if (const auto* g = std::get_if<RawGate>(&ins)) {
      out[g->gate_id] += g->total_angle() * static_cast<double>(repetitions);
    }
  }
  return out;
}

std::string PulseSchedule::to_text() const {
  std::ostringstream out;
  out << "# uqs-schedule v1\n# bit-order little-endian (qubit 0 = least significant bit)\n";
  out << "QUBITS " << n_qubits << "\n";
  out << "REPEAT " << repetitions << "\n";
  if (cost) {
    out << "COST";
    std::istringstream kv(cost->to_text());
    std::string item;
    while (std::getline(kv, item)) out << ' ' << item;
    out << "\n";
  }
  for (const auto& ins : cycle) {
    if (const auto* l = std::get_if<ApplyLocal>(&ins)) {
      if (l->layer.is_homogeneous()) {
        out << "LOCAL hom";
        write_unitary(out, l->layer.on(0));
      } else {
        out << "LOCAL inh";
        for (std::size_t q = 0; q < *l->layer.size(); ++q) write_unitary(out, l->layer.on(q));
      }
      out << "\n";
    } else {
      const auto& g = std::get<RawGate>(ins);
      out << "GATE " << g.gate_id << ' ' << fmt(g.theta) << ' ';
      for (std::size_t k = 0; k < g.targets.size(); ++k) {
        if (k) out << ',';
        out << g.targets[k].a << '-' << g.targets[k].b << ':' << fmt(g.targets[k].weight);
      }
      if (g.slot >= 0) out << " @" << g.slot;
      out << "\n";
    }
  }
  return out.str();
}

PulseSchedule PulseSchedule::parse(std::string_view text) {
  PulseSchedule s;
  bool have_qubits = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokenize(line);
    if (toks.empty() || toks.front().text.starts_with('#')) continue;
    const std::string& kw = toks.front().text;
    if (kw == "QUBITS") {
      if (toks.size() != 2) throw ParseError(line_no, toks.front().column, "QUBITS takes one value");
      s.n_qubits = to_size(toks[1].text, line_no, toks[1].column);
      have_qubits = true;
    } else if (kw == "REPEAT") {
      if (toks.size() != 2) throw ParseError(line_no, toks.front().column, "REPEAT takes one value");
      s.repetitions = to_size(toks[1].text, line_no, toks[1].column);
    } else if (kw == "COST") {
      std::string kv;
      for (std::size_t k = 1; k < toks.size(); ++k) kv += toks[k].text + "\n";
      try {
        s.cost = CostReport::parse(kv);
      } catch (const ParseError& e) {
        throw ParseError(line_no, toks.front().column, e.what());
      }
    } else if (kw == "LOCAL") {
      if (!have_qubits) throw ParseError(line_no, toks.front().column, "LOCAL before QUBITS");
      if (toks.size() < 2) throw ParseError(line_no, toks.front().column, "LOCAL needs a kind");
      if (toks[1].text == "hom") {
        if (toks.size() != 10) throw ParseError(line_no, toks[1].column, "homogeneous layer needs 8 reals");
        s.cycle.emplace_back(ApplyLocal{LocalLayer::homogeneous(read_unitary(toks, 2, line_no))});
      } else if (toks[1].text == "inh") {
        if (toks.size() != 2 + 8 * s.n_qubits) {
          throw ParseError(line_no, toks[1].column,
                           "inhomogeneous layer needs " + std::to_string(8 * s.n_qubits) + " reals");
        }
        std::vector<SingleQubitUnitary> us;
        for (std::size_t q = 0; q < s.n_qubits; ++q) us.push_back(read_unitary(toks, 2 + 8 * q, line_no));
        s.cycle.emplace_back(ApplyLocal{LocalLayer::inhomogeneous(std::move(us))});
      } else {
        throw ParseError(line_no, toks[1].column, "unknown layer kind '" + toks[1].text + "'");
      }
    } else if (kw == "GATE") {
      if (!have_qubits) throw ParseError(line_no, toks.front().column, "GATE before QUBITS");
      if (toks.size() < 4 || toks.size() > 5) {
        throw ParseError(line_no, toks.front().column, "GATE <id> <theta> <targets> [@slot]");
      }
      RawGate g;
      g.gate_id = toks[1].text;
      g.theta = to_double(toks[2], line_no);
      std::string_view list = toks[3].text;
      std::size_t col = toks[3].column;
      while (!list.empty()) {
        auto comma = list.find(',');
        std::string item(list.substr(0, comma));
        auto dash = item.find('-');
        auto colon = item.find(':');
        if (dash == std::string::npos || colon == std::string::npos || colon < dash) {
          throw ParseError(line_no, col, "expected a-b:weight, got '" + item + "'");
        }
        ZZCoupling c;
        c.a = to_size(item.substr(0, dash), line_no, col);
        c.b = to_size(item.substr(dash + 1, colon - dash - 1), line_no, col);
        c.weight = to_double(Token{col + colon + 1, item.substr(colon + 1)}, line_no);
        if (c.a >= s.n_qubits || c.b >= s.n_qubits || c.a == c.b) {
          throw ParseError(line_no, col, "invalid qubit pair in '" + item + "'");
        }
        g.targets.push_back(c);
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
        col += comma + 1;
      }
      if (toks.size() == 5) {
        if (!toks[4].text.starts_with('@')) throw ParseError(line_no, toks[4].column, "expected @slot");
        g.slot = static_cast<int>(to_size(toks[4].text.substr(1), line_no, toks[4].column + 1));
      }
      s.cycle.emplace_back(std::move(g));
    } else {
      throw ParseError(line_no, toks.front().column, "unknown instruction '" + kw + "'");
    }
  }
  if (!have_qubits) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing QUBITS line");
  return s;
}

bool schedules_equal(const PulseSchedule& a, const PulseSchedule& b, double tol) {
  if (a.n_qubits != b.n_qubits || a.repetitions != b.repetitions || a.cycle.size() != b.cycle.size()) {
    return false;
  }
  if (a.cost.has_value() != b.cost.has_value()) return false;
  if (a.cost && !(*a.cost == *b.cost)) return false;
  for (std::size_t i = 0; i < a.cycle.size(); ++i) {
    if (a.cycle[i].index() != b.cycle[i].index()) return false;
    if (const auto* la = std::get_if<ApplyLocal>(&a.cycle[i])) {
      const auto& lb = std::get<ApplyLocal>(b.cycle[i]);
      if (la->layer.is_homogeneous() != lb.layer.is_homogeneous()) return false;
      if (la->layer.size() != lb.layer.size()) return false;
      const std::size_t n = la->layer.size().value_or(1);
      for (std::size_t q = 0; q < n; ++q) {
        if ((la->layer.on(q).matrix() - lb.layer.on(q).matrix()).cwiseAbs().maxCoeff() > tol) return false;
      }
    } else {
      const auto& ga = std::get<RawGate>(a.cycle[i]);
      const auto& gb = std::get<RawGate>(b.cycle[i]);
      if (ga.gate_id != gb.gate_id || ga.slot != gb.slot || ga.targets.size() != gb.targets.size()) return false;
      if (std::abs(ga.theta - gb.theta) > tol) return false;
      for (std::size_t k = 0; k < ga.targets.size(); ++k) {
        if (ga.targets[k].a != gb.targets[k].a || ga.targets[k].b != gb.targets[k].b ||
            std::abs(ga.targets[k].weight - gb.targets[k].weight) > tol) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace uqs
