// Copyright 2026 The splfr Authors
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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "splfr/tradeoff.hpp"

namespace splfr {

struct named_series {
  std::string name;
  std::vector<big_point> points;
  bool reference = false;  // sampled bound, drawn dashed
};

struct emitted_curves {
  std::filesystem::path csv;
  std::filesystem::path bounds_csv;
  std::filesystem::path svg;
  std::size_t curve_rows = 0;
  std::size_t bound_rows = 0;
};

namespace detail {

inline std::string decimal12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

inline void write_series_csv(std::ostream& os, const char* first_col,
                             const std::vector<named_series>& series) {
  os << first_col << ",M,R,M_exact,R_exact\n";
  for (const auto& s : series)
    for (const auto& p : s.points)
      os << s.name << ',' << decimal12(to_double(p.m)) << ','
         << decimal12(to_double(p.r)) << ',' << exact_string(p.m) << ','
         << exact_string(p.r) << '\n';
}

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
                                 "#17becf", "#bcbd22"};
  return colors[i % (sizeof colors / sizeof *colors)];
}

}  // namespace detail

/// Standalone SVG line chart of load against memory.
inline std::string render_svg(const std::vector<named_series>& series,
                              const std::string& title, double max_m,
                              double max_r) {
  const double w = 800, h = 520, left = 70, right = 190, top = 40, bottom = 60;
  const double pw = w - left - right, ph = h - top - bottom;
  if (max_m <= 0) max_m = 1;
  if (max_r <= 0) max_r = 1;
  auto sx = [&](double m) { return left + pw * m / max_m; };
  auto sy = [&](double r) { return top + ph * (1 - r / max_r); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << left + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-size=\"15\">" << title << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\""
     << left + pw << "\" y2=\"" << top + ph << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
     << "\" y2=\"" << top + ph << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 10; ++i) {
    const double m = max_m * i / 10, r = max_r * i / 10;
    char lm[32], lr[32];
    std::snprintf(lm, sizeof lm, "%g", m);
    std::snprintf(lr, sizeof lr, "%g", r);
    os << "<text x=\"" << sx(m) << "\" y=\"" << top + ph + 18
       << "\" text-anchor=\"middle\">" << lm << "</text>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << sy(r) + 4
       << "\" text-anchor=\"end\">" << lr << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << h - 15
     << "\" text-anchor=\"middle\">M (files)</text>\n";
  os << "<text x=\"18\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 18 "
     << top + ph / 2 << ")\" text-anchor=\"middle\">R (files)</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    os << "<polyline fill=\"none\" stroke=\"" << detail::palette(i)
       << "\" stroke-width=\"1.6\"" << (s.reference ? " stroke-dasharray=\"5,4\"" : "")
       << " points=\"";
    for (const auto& p : s.points) {
      const double m = to_double(p.m), r = to_double(p.r);
      if (m < 0 || m > max_m || r > max_r) continue;
      os << sx(m) << ',' << sy(r) << ' ';
    }
    os << "\"/>\n";
    const double ly = top + 14 + 18.0 * static_cast<double>(i);
    os << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\""
       << left + pw + 40 << "\" y2=\"" << ly << "\" stroke=\""
       << detail::palette(i) << "\" stroke-width=\"2\""
       << (s.reference ? " stroke-dasharray=\"5,4\"" : "") << "/>\n";
    os << "<text x=\"" << left + pw + 46 << "\" y=\"" << ly + 4 << "\">"
       << s.name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// Corner points of the requested scheme curves plus sampled reference
/// bounds (PDA-class bound and cut-set bound on [1, N]).
inline std::vector<named_series> reference_bounds(unsigned n, unsigned k,
                                                  unsigned samples = 200) {
  named_series pda{"pda-bound", {}, true};
  named_series cut{"cutset-bound", {}, true};
  for (unsigned i = 0; i <= samples; ++i) {
    const rational m = rational(1) + rational(std::int64_t{i} * (n - 1), samples);
    pda.points.push_back({to_big(m), to_big(pda_lower_bound(n, k, m))});
    cut.points.push_back({to_big(m), to_big(cutset_bound(n, k, m))});
  }
  return {pda, cut};
}

/// Writes curves.csv (one row per corner), bounds.csv (reference series)
/// and tradeoff.svg into `out_dir`.
inline emitted_curves emit_curves(unsigned n, unsigned k,
                                  const std::vector<curve_scheme>& schemes,
                                  const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<named_series> curves;
  for (auto s : schemes)
    curves.push_back({std::string(scheme_tag(s)), scheme_curve(s, n, k).corners()});
  const auto bounds = reference_bounds(n, k);

  emitted_curves out;
  out.csv = out_dir / "curves.csv";
  out.bounds_csv = out_dir / "bounds.csv";
  out.svg = out_dir / "tradeoff.svg";
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
  };
  {
    auto f = open(out.csv);
    detail::write_series_csv(f, "scheme", curves);
  }
  {
    auto f = open(out.bounds_csv);
    detail::write_series_csv(f, "series", bounds);
  }
  for (const auto& s : curves) out.curve_rows += s.points.size();
  for (const auto& s : bounds) out.bound_rows += s.points.size();

  std::vector<named_series> all = curves;
  all.insert(all.end(), bounds.begin(), bounds.end());
  double max_r = 0;
  for (const auto& s : all)
    for (const auto& p : s.points)
      if (to_double(p.m) >= 1 || s.reference) max_r = std::max(max_r, to_double(p.r));
  {
    auto f = open(out.svg);
    f << render_svg(all,
                    "N=" + std::to_string(n) + ", K=" + std::to_string(k),
                    static_cast<double>(n), max_r);
  }
  return out;
}

}  // namespace splfr
