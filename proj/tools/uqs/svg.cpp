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

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace uqs::cli {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 70;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

struct Range {
  double lo, hi;
  double map(double v, double size) const { return (v - lo) / (hi - lo) * size; }
};

Range padded(double lo, double hi) {
  if (!(lo < hi)) {
    const double pad = std::max(1.0, std::abs(lo)) * 0.5;
    return {lo - pad, hi + pad};
  }
  return {lo, hi};
}

std::string open_svg(const Axes& axes) {
  std::string s =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
      "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  s += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">" +
       xml_escape(axes.title) + "</text>\n";
  s += "<text x=\"" + num(kLeft + kPlotW / 2) + "\" y=\"" + num(kHeight - 20) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + xml_escape(axes.x_label) +
       "</text>\n";
  s += "<text x=\"20\" y=\"" + num(kTop + kPlotH / 2) + "\" transform=\"rotate(-90 20 " + num(kTop + kPlotH / 2) +
       ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + xml_escape(axes.y_label) +
       "</text>\n";
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(kPlotW) + "\" height=\"" +
       num(kPlotH) + "\" fill=\"none\" stroke=\"black\"/>\n";
  return s;
}

std::string y_ticks(const Range& y) {
  std::string s;
  for (int i = 0; i <= 5; ++i) {
    const double v = y.lo + (y.hi - y.lo) * i / 5.0;
    const double py = kTop + kPlotH - y.map(v, kPlotH);
    s += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(py) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(v) + "</text>\n";
  }
  return s;
}

Range y_range(const Axes& axes, double lo, double hi) {
  if (axes.y_lo < axes.y_hi) return {axes.y_lo, axes.y_hi};
  return padded(lo, hi);
}

}  // namespace

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string line_plot(const Axes& axes, const std::vector<Series>& series) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw std::logic_error("series x and y differ in length");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  if (!std::isfinite(xlo)) xlo = xhi = ylo = yhi = 0.0;
  const Range x = padded(xlo, xhi);
  const Range y = y_range(axes, ylo, yhi);

  std::string s = open_svg(axes) + y_ticks(y);
  for (int i = 0; i <= 5; ++i) {
    const double v = x.lo + (x.hi - x.lo) * i / 5.0;
    const double px = kLeft + x.map(v, kPlotW);
    s += "<line x1=\"" + num(px) + "\" y1=\"" + num(kTop + kPlotH) + "\" x2=\"" + num(px) + "\" y2=\"" +
         num(kTop + kPlotH + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(px) + "\" y=\"" + num(kTop + kPlotH + 20) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(v) + "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& ser = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    const auto point = [&](std::size_t i) {
      const double py = std::clamp(kTop + kPlotH - y.map(ser.y[i], kPlotH), kTop, kTop + kPlotH);
      return num(kLeft + x.map(ser.x[i], kPlotW)) + "," + num(py);
    };
    if (ser.x.size() == 1) {
      const auto p = point(0);
      const auto comma = p.find(',');
      s += "<circle cx=\"" + p.substr(0, comma) + "\" cy=\"" + p.substr(comma + 1) + "\" r=\"4\" fill=\"" + color +
           "\"/>\n";
    } else if (!ser.x.empty()) {
      s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < ser.x.size(); ++i) s += (i ? " " : "") + point(i);
      s += "\"/>\n";
    }
    if (!ser.name.empty()) {
      const double ly = kTop + 20 + 18 * static_cast<double>(k);
      s += "<line x1=\"" + num(kLeft + kPlotW - 170) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
           num(kLeft + kPlotW - 145) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
      s += "<text x=\"" + num(kLeft + kPlotW - 140) + "\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(ser.name) + "</text>\n";
    }
  }
  return s + "</svg>\n";
}

std::string bar_chart(const Axes& axes, const std::vector<std::string>& labels, const std::vector<double>& values) {
  if (labels.size() != values.size()) throw std::logic_error("bar labels and values differ in length");
  double lo = 0.0, hi = 0.0;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const Range y = y_range(axes, lo, hi);
  std::string s = open_svg(axes) + y_ticks(y);
  const double slot = values.empty() ? kPlotW : kPlotW / static_cast<double>(values.size());
  const double zero = kTop + kPlotH - y.map(std::clamp(0.0, y.lo, y.hi), kPlotH);
  // Long histograms get every k-th label so the text stays legible.
  const std::size_t stride = std::max<std::size_t>(1, values.size() / 20);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double top = kTop + kPlotH - y.map(std::clamp(values[i], y.lo, y.hi), kPlotH);
    const double x0 = kLeft + slot * static_cast<double>(i) + slot * 0.1;
    s += "<rect x=\"" + num(x0) + "\" y=\"" + num(std::min(top, zero)) + "\" width=\"" + num(slot * 0.8) +
         "\" height=\"" + num(std::abs(zero - top)) + "\" fill=\"" + kPalette[0] + "\"/>\n";
    if (i % stride == 0) {
      s += "<text x=\"" + num(x0 + slot * 0.4) + "\" y=\"" + num(kTop + kPlotH + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(labels[i]) +
           "</text>\n";
    }
  }
  return s + "</svg>\n";
}

}  // namespace uqs::cli
