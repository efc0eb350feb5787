#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

namespace coarse::cli {

namespace {

constexpr double kWidth = 640, kHeight = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
constexpr std::array<const char*, 4> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

void write_loglog_svg(std::ostream& out, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<PlotSeries>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] <= 0 || s.y[i] <= 0) continue;
      x0 = std::min(x0, std::log10(s.x[i]));
      x1 = std::max(x1, std::log10(s.x[i]));
      y0 = std::min(y0, std::log10(s.y[i]));
      y1 = std::max(y1, std::log10(s.y[i]));
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  x0 = std::floor(x0), x1 = std::max(std::ceil(x1), x0 + 1);
  y0 = std::floor(y0), y1 = std::max(std::ceil(y1), y0 + 1);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - x0) / (x1 - x0) * pw; };
  auto py = [&](double ly) { return kTop + ph - (ly - y0) / (y1 - y0) * ph; };

  out << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="12">)",
                     kWidth, kHeight)
      << '\n';
  out << fmt::format(R"(<text x="{:.1f}" y="22" text-anchor="middle" font-size="14">{}</text>)", kWidth / 2, escape(title))
      << '\n';
  out << fmt::format(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>)", kLeft, kTop, pw, ph)
      << '\n';
  for (double d = x0; d <= x1; d += 1)
    out << fmt::format(R"(<text x="{:.1f}" y="{:.1f}" text-anchor="middle">1e{}</text>)", px(d), kTop + ph + 18, d) << '\n';
  for (double d = y0; d <= y1; d += 1)
    out << fmt::format(R"(<text x="{:.1f}" y="{:.1f}" text-anchor="end">1e{}</text>)", kLeft - 6, py(d) + 4, d) << '\n';
  out << fmt::format(R"(<text x="{:.1f}" y="{:.1f}" text-anchor="middle">{}</text>)", kLeft + pw / 2, kHeight - 10,
                     escape(x_label))
      << '\n';
  out << fmt::format(R"svg(<text x="16" y="{:.1f}" transform="rotate(-90 16 {:.1f})" text-anchor="middle">{}</text>)svg",
                     kTop + ph / 2, kTop + ph / 2, escape(y_label))
      << '\n';
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % kColors.size()];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (s.x[i] > 0 && s.y[i] > 0)
        pts += fmt::format("{}{:.2f},{:.2f}", pts.empty() ? "" : " ", px(std::log10(s.x[i])), py(std::log10(s.y[i])));
    out << fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)", color, pts) << '\n';
    out << fmt::format(R"(<text x="{:.1f}" y="{:.1f}" fill="{}">{}</text>)", kLeft + 10, kTop + 16 + 16 * k, color,
                       escape(s.name))
        << '\n';
  }
  out << "</svg>\n";
}

}  // namespace coarse::cli
