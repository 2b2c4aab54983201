// Copyright 2026 The lindblad Authors
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
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace lindblad::cli {

struct PlotSeries {
  std::vector<double> x, y;
  std::string label;
  bool markers = false;  // points instead of a polyline
  bool dashed = false;
};

struct PlotSpec {
  std::string title, xlabel, ylabel;
  bool log_x = false, log_y = false;
  std::vector<PlotSeries> series;
};

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace detail

/// Static SVG line chart; deterministic output for identical input.
inline std::string render_svg(const PlotSpec& p) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 40, B = 55;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  auto fx = [&](double v) { return p.log_x ? std::log10(v) : v; };
  auto fy = [&](double v) { return p.log_y ? std::log10(v) : v; };
  auto ok = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!p.log_x || x > 0) && (!p.log_y || y > 0);
  };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : p.series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (ok(s.x[i], s.y[i])) {
        x0 = std::min(x0, fx(s.x[i])); x1 = std::max(x1, fx(s.x[i]));
        y0 = std::min(y0, fy(s.y[i])); y1 = std::max(y1, fy(s.y[i]));
      }
  if (!(x1 >= x0)) { x0 = 0; x1 = 1; }
  if (!(y1 >= y0)) { y0 = 0; y1 = 1; }
  if (x1 - x0 < 1e-12) { x0 -= 0.5; x1 += 0.5; }
  if (y1 - y0 < 1e-12) { y0 -= 0.5; y1 += 0.5; }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double v) { return L + (fx(v) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (fy(v) - y0) / (y1 - y0) * (H - T - B); };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" viewBox=\"0 0 640 420\" "
                  "font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
  s += "<rect x=\"" + detail::num(L) + "\" y=\"" + detail::num(T) + "\" width=\"" + detail::num(W - L - R) +
       "\" height=\"" + detail::num(H - T - B) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double gx = x0 + (x1 - x0) * k / 4.0, gy = y0 + (y1 - y0) * k / 4.0;
    const double sx = L + (W - L - R) * k / 4.0, sy = H - B - (H - T - B) * k / 4.0;
    s += "<text x=\"" + detail::num(sx) + "\" y=\"" + detail::num(H - B + 16) + "\" text-anchor=\"middle\">" +
         detail::tick(p.log_x ? std::pow(10.0, gx) : gx) + "</text>\n";
    s += "<text x=\"" + detail::num(L - 6) + "\" y=\"" + detail::num(sy + 4) + "\" text-anchor=\"end\">" +
         detail::tick(p.log_y ? std::pow(10.0, gy) : gy) + "</text>\n";
  }
  s += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" + detail::escape(p.title) + "</text>\n";
  s += "<text x=\"" + detail::num(L + (W - L - R) / 2) + "\" y=\"" + detail::num(H - 12) +
       "\" text-anchor=\"middle\">" + detail::escape(p.xlabel) + "</text>\n";
  s += "<text x=\"16\" y=\"" + detail::num(T + (H - T - B) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       detail::num(T + (H - T - B) / 2) + ")\">" + detail::escape(p.ylabel) + "</text>\n";

  for (std::size_t k = 0; k < p.series.size(); ++k) {
    const auto& ser = p.series[k];
    const std::string col = colors[k % 6];
    if (ser.markers) {
      for (std::size_t i = 0; i < std::min(ser.x.size(), ser.y.size()); ++i)
        if (ok(ser.x[i], ser.y[i]))
          s += "<circle cx=\"" + detail::num(px(ser.x[i])) + "\" cy=\"" + detail::num(py(ser.y[i])) +
               "\" r=\"3\" fill=\"" + col + "\"/>\n";
    } else {
      s += "<polyline fill=\"none\" stroke=\"" + col + "\" stroke-width=\"1.5\"";
      if (ser.dashed) s += " stroke-dasharray=\"6 4\"";
      s += " points=\"";
      for (std::size_t i = 0; i < std::min(ser.x.size(), ser.y.size()); ++i)
        if (ok(ser.x[i], ser.y[i])) s += detail::num(px(ser.x[i])) + "," + detail::num(py(ser.y[i])) + " ";
      s += "\"/>\n";
    }
    const double ly = T + 16 + 16.0 * static_cast<double>(k);
    s += "<rect x=\"" + detail::num(W - R - 150) + "\" y=\"" + detail::num(ly - 9) + "\" width=\"12\" height=\"10\" fill=\"" +
         col + "\"/>\n";
    s += "<text x=\"" + detail::num(W - R - 132) + "\" y=\"" + detail::num(ly) + "\">" + detail::escape(ser.label) +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace lindblad::cli
