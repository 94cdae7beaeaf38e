// Copyright 2026 The abckit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "abckit/csv.hpp"
#include "abckit/errors.hpp"

namespace abckit {

/// Histogram bars with the oracle density as an overlaid curve, rendered
/// as one standalone SVG document. Illustration only; analysis runs on
/// the CSVs.
inline std::string render_histogram_svg(const std::vector<HistogramBin>& bins,
                                        const std::string& title) {
  if (bins.empty()) throw invalid_input("histogram svg: no bins");
  const double width = 640.0;
  const double height = 400.0;
  const double margin = 48.0;
  const double plot_w = width - 2 * margin;
  const double plot_h = height - 2 * margin;

  const double x_lo = bins.front().lo;
  const double x_hi = bins.back().hi;
  double y_hi = 0.0;
  for (const HistogramBin& bin : bins) {
    y_hi = std::max(y_hi, std::max(bin.density, bin.oracle_density));
  }
  if (!(y_hi > 0.0)) y_hi = 1.0;
  y_hi *= 1.05;

  const auto x_px = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto y_px = [&](double y) { return height - margin - y / y_hi * plot_h; };
  const auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << title << "</text>\n";
  for (const HistogramBin& bin : bins) {
    const double x = x_px(bin.lo);
    const double w = x_px(bin.hi) - x;
    const double y = y_px(bin.density);
    const double h = height - margin - y;
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
        << "\" height=\"" << num(h) << "\" fill=\"#9ecae1\" stroke=\"#4292c6\" stroke-width=\"0.5\"/>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"";
  for (const HistogramBin& bin : bins) {
    const double mid = 0.5 * (bin.lo + bin.hi);
    out << num(x_px(mid)) << ',' << num(y_px(bin.oracle_density)) << ' ';
  }
  out << "\"/>\n";
  out << "<line x1=\"" << num(margin) << "\" y1=\"" << num(height - margin) << "\" x2=\""
      << num(width - margin) << "\" y2=\"" << num(height - margin)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << num(margin) << "\" y1=\"" << num(margin) << "\" x2=\"" << num(margin)
      << "\" y2=\"" << num(height - margin) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<text x=\"" << num(margin) << "\" y=\"" << num(height - margin + 16)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << num(x_lo) << "</text>\n";
  out << "<text x=\"" << num(width - margin) << "\" y=\"" << num(height - margin + 16)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(x_hi)
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace abckit
