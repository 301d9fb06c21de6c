#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netforge::svg {

// Minimal self-contained log-log line chart. Points with a non-positive
// coordinate cannot be placed on log axes and are dropped.
inline std::string loglog_chart(std::span<const std::pair<double, double>> points,
                                const std::string& title, const std::string& x_label,
                                const std::string& y_label) {
  constexpr double kWidth = 640, kHeight = 480, kMargin = 60;
  std::vector<std::pair<double, double>> logs;
  for (auto [x, y] : points) {
    if (x > 0 && y > 0) logs.emplace_back(std::log10(x), std::log10(y));
  }
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!logs.empty()) {
    auto [xmin, xmax] = std::minmax_element(logs.begin(), logs.end());
    x0 = std::floor(xmin->first);
    x1 = std::ceil(xmax->first);
    auto [ymin, ymax] = std::minmax_element(
        logs.begin(), logs.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    y0 = std::floor(ymin->second);
    y1 = std::ceil(ymax->second);
    if (x1 <= x0) x1 = x0 + 1;
    if (y1 <= y0) y1 = y0 + 1;
  }
  auto px = [&](double lx) { return kMargin + (lx - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
  auto py = [&](double ly) {
    return kHeight - kMargin - (ly - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
  };

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
                "font-family=\"sans-serif\" font-size=\"12\">\n",
                kWidth, kHeight);
  out += buf;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<path d=\"M%.1f %.1f V%.1f H%.1f\" stroke=\"black\" fill=\"none\"/>\n", kMargin,
                kMargin, kHeight - kMargin, kWidth - kMargin);
  out += buf;
  for (double d = x0; d <= x1; d += 1) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">1e%g</text>\n", px(d),
                  kHeight - kMargin + 18, d);
    out += buf;
  }
  for (double d = y0; d <= y1; d += 1) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">1e%g</text>\n",
                  kMargin - 6, py(d) + 4, d);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"24\" text-anchor=\"middle\">", kWidth / 2);
  out += buf + title + "</text>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">", kWidth / 2,
                kHeight - 16);
  out += buf + x_label + "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%.1f\" text-anchor=\"middle\" transform=\"rotate(-90 16 %.1f)\">",
                kHeight / 2, kHeight / 2);
  out += buf + y_label + "</text>\n";
  if (!logs.empty()) {
    out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (auto [lx, ly] : logs) {
      std::snprintf(buf, sizeof buf, "%.1f,%.1f ", px(lx), py(ly));
      out += buf;
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace netforge::svg
