#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "expsum/format.hpp"
#include "expsum/prony.hpp"
#include "expsum/series.hpp"

namespace expsum {

struct PlotOptions {
  int width = 800;
  int height = 500;
  int samples_per_unit = 10;
  std::string title;
};

namespace detail {

inline std::string fixed2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Data as "+" markers, Re Y(t) as one polyline sampled samples_per_unit
/// times per unit of t across the data range. Output depends only on the
/// inputs.
inline std::string render_plot_svg(const ExponentialModel& model, const TimeSeries& series,
                                   const PlotOptions& options = {}) {
  double t0 = series.points().front().t;
  double t1 = series.points().back().t;
  if (t1 - t0 <= 0.0) {
    t0 -= 0.5;
    t1 += 0.5;
  }
  const auto steps = std::max<long long>(
      1, std::llround((t1 - t0) * static_cast<double>(options.samples_per_unit)));
  std::vector<std::pair<double, double>> curve;
  curve.reserve(static_cast<std::size_t>(steps) + 1);
  for (long long i = 0; i <= steps; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(steps);
    curve.emplace_back(t, evaluate(model, t).real());
  }

  double y0 = curve.front().second;
  double y1 = y0;
  for (const auto& [t, y] : curve) {
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  for (const auto& p : series) {
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  if (y1 - y0 <= 0.0) {
    y0 -= 1.0;
    y1 += 1.0;
  }

  constexpr double left = 70, right = 20, top = 30, bottom = 50;
  const double w = options.width, h = options.height;
  const double pw = w - left - right, ph = h - top - bottom;
  auto px = [&](double t) { return left + (t - t0) / (t1 - t0) * pw; };
  auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };
  using detail::fixed2;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
         "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
         std::to_string(options.width) + " " + std::to_string(options.height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    out += "<text class=\"title\" x=\"" + fixed2(w / 2) +
           "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           detail::xml_escape(options.title) + "</text>\n";
  }

  const std::string x_axis_y = fixed2(top + ph);
  out += "<line class=\"axis\" x1=\"" + fixed2(left) + "\" y1=\"" + x_axis_y + "\" x2=\"" +
         fixed2(left + pw) + "\" y2=\"" + x_axis_y + "\" stroke=\"black\"/>\n";
  out += "<line class=\"axis\" x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(top) + "\" x2=\"" +
         fixed2(left) + "\" y2=\"" + x_axis_y + "\" stroke=\"black\"/>\n";

  auto label = [&](double x, double y, const char* anchor, double value) {
    out += "<text class=\"label\" x=\"" + fixed2(x) + "\" y=\"" + fixed2(y) +
           "\" text-anchor=\"" + anchor + "\" font-family=\"sans-serif\" font-size=\"12\">" +
           format_short(value) + "</text>\n";
  };
  label(left, top + ph + 18, "middle", t0);
  label(left + pw, top + ph + 18, "middle", t1);
  label(left - 6, top + ph + 4, "end", y0);
  label(left - 6, top + 4, "end", y1);

  out += "<polyline class=\"model\" fill=\"none\" stroke=\"#1f4e9a\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (i > 0) out += ' ';
    out += fixed2(px(curve[i].first)) + "," + fixed2(py(curve[i].second));
  }
  out += "\"/>\n";

  constexpr double arm = 4.0;
  for (const auto& p : series) {
    const double x = px(p.t), y = py(p.y);
    out += "<path class=\"marker\" d=\"M" + fixed2(x - arm) + " " + fixed2(y) + " L" +
           fixed2(x + arm) + " " + fixed2(y) + " M" + fixed2(x) + " " + fixed2(y - arm) + " L" +
           fixed2(x) + " " + fixed2(y + arm) + "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
  }

  out += "<text class=\"legend\" x=\"" + fixed2(left + pw) + "\" y=\"" + fixed2(h - 8) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
         "+ tabular data, — interpolating function</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace expsum
