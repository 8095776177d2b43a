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

// Self-contained 800x600 SVG charts.

#pragma once

#include <string>
#include <vector>

namespace uqs::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
  /// Fixed y range; when lo >= hi the range follows the data.
  double y_lo = 0.0;
  double y_hi = 0.0;
};

std::string line_plot(const Axes& axes, const std::vector<Series>& series);
std::string bar_chart(const Axes& axes, const std::vector<std::string>& labels, const std::vector<double>& values);

/// Escapes the five XML special characters.
std::string xml_escape(const std::string& text);

}  // namespace uqs::cli
