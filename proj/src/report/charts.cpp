#include "ambilex/report/charts.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "ambilex/report/svg.h"

namespace ambilex::report {

namespace {

using Anchor = SvgDocument::Anchor;

// Smallest step from {1, 2, 5} x 10^k giving at most `max_ticks` intervals.
std::int64_t tick_step(std::int64_t max_value, int max_ticks) {
  std::int64_t scale = 1;
  while (true) {
    for (std::int64_t m : {1, 2, 5}) {
      const std::int64_t step = m * scale;
      if ((max_value + step - 1) / step <= max_ticks) return step;
    }
    scale *= 10;
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << body;
  if (!out.flush()) throw IoError(path, "write failed");
}

}  // namespace

ScatterData scatter_points(std::span<const ambiguity::AmbiguityScore> scores, const corpus::StimulusSet& stimuli) {
  ScatterData data;
  for (const auto& s : scores) {
    const auto hs = s.h_short();
    const auto hl = s.h_long();
    const corpus::StimulusImage* image = stimuli.find(s.image_id);
    if (!hs || !hl || image == nullptr) {
      data.skipped.push_back(s.image_id);
      continue;
    }
    data.points.push_back({s.image_id, *hs, *hl, image->category});
  }
  return data;
}

std::string_view category_color(corpus::Category category) {
  switch (category) {
    case corpus::Category::Recognizable: return "#1f77b4";
    case corpus::Category::Dichotomous: return "#ff7f0e";
    case corpus::Category::Indeterminate: return "#2ca02c";
    case corpus::Category::Abstract: return "#d62728";
    case corpus::Category::AbstractFlat: return "#9467bd";
  }
  return "#000000";
}

std::string histogram_svg(const ambiguity::DisplayHistogram& display, std::string_view title) {
  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 120;
  constexpr double kPlotW = kWidth - kLeft - kRight;
  constexpr double kPlotH = kHeight - kTop - kBottom;

  std::vector<std::pair<std::string, std::int64_t>> bars = display.bins;
  if (display.other_count > 0) bars.emplace_back("[other]", display.other_count);

  std::int64_t max_count = 0;
  for (const auto& [_, c] : bars) max_count = std::max(max_count, c);
  const std::int64_t step = tick_step(std::max<std::int64_t>(max_count, 1), 8);
  const std::int64_t y_max = std::max<std::int64_t>((max_count + step - 1) / step * step, step);
  auto y_of = [&](double v) { return kTop + kPlotH - v / static_cast<double>(y_max) * kPlotH; };

  SvgDocument svg(kWidth, kHeight);
  svg.rect(0, 0, kWidth, kHeight, "#ffffff");
  if (!title.empty()) svg.text(kWidth / 2, 24, title, 14, Anchor::Middle);

  for (std::int64_t v = 0; v <= y_max; v += step) {
    const double y = y_of(static_cast<double>(v));
    svg.line(kLeft - 4, y, kLeft, y, "#000000");
    svg.text(kLeft - 8, y + 4, fmt::format("{}", v), 11, Anchor::End);
  }
  svg.text(16, kTop + kPlotH / 2, "count", 12, Anchor::Middle, -90);

  if (!bars.empty()) {
    const double slot = kPlotW / static_cast<double>(bars.size());
    const double bar_w = slot * 0.8;
    for (std::size_t i = 0; i < bars.size(); ++i) {
      const auto& [label, count] = bars[i];
      const bool other = display.other_count > 0 && i + 1 == bars.size();
      const double x = kLeft + slot * static_cast<double>(i) + (slot - bar_w) / 2;
      const double y = y_of(static_cast<double>(count));
      svg.rect(x, y, bar_w, kTop + kPlotH - y, other ? "#999999" : "#4c72b0");
      svg.text(x + bar_w / 2, y - 4, fmt::format("{}", count), 10, Anchor::Middle);
      const double lx = x + bar_w / 2;
      const double ly = kTop + kPlotH + 12;
      svg.text(lx, ly, label, 11, Anchor::End, -45);
    }
  }

  svg.line(kLeft, kTop, kLeft, kTop + kPlotH, "#000000");
  svg.line(kLeft, kTop + kPlotH, kLeft + kPlotW, kTop + kPlotH, "#000000");
  return svg.finish();
}

void render_histogram(const ambiguity::DisplayHistogram& display, const std::filesystem::path& out,
                      std::string_view title) {
  write_text_file(out, histogram_svg(display, title));
}

std::string scatter_svg(std::span<const ScatterPoint> points, const ScatterOptions& options) {
  constexpr double kWidth = 600, kHeight = 480;
  constexpr double kLeft = 60, kRight = 160, kTop = 30, kBottom = 60;
  constexpr double kPlotW = kWidth - kLeft - kRight;
  constexpr double kPlotH = kHeight - kTop - kBottom;

  double max_value = 6.0;
  for (const auto& p : points) max_value = std::max({max_value, p.h_short, p.h_long});
  const double range = std::ceil(max_value);
  auto x_of = [&](double v) { return kLeft + v / range * kPlotW; };
  auto y_of = [&](double v) { return kTop + kPlotH - v / range * kPlotH; };

  SvgDocument svg(kWidth, kHeight);
  svg.rect(0, 0, kWidth, kHeight, "#ffffff");

  for (int v = 0; v <= static_cast<int>(range); ++v) {
    const double x = x_of(v);
    const double y = y_of(v);
    svg.line(x, kTop + kPlotH, x, kTop + kPlotH + 4, "#000000");
    svg.text(x, kTop + kPlotH + 18, fmt::format("{}", v), 11, Anchor::Middle);
    svg.line(kLeft - 4, y, kLeft, y, "#000000");
    svg.text(kLeft - 8, y + 4, fmt::format("{}", v), 11, Anchor::End);
  }

  const auto& t = options.thresholds;
  if (t.h_short >= 0 && t.h_short <= range) {
    svg.line(x_of(t.h_short), kTop, x_of(t.h_short), kTop + kPlotH, "#888888", 1.0, "4 3");
  }
  if (t.h_long >= 0 && t.h_long <= range) {
    svg.line(kLeft, y_of(t.h_long), kLeft + kPlotW, y_of(t.h_long), "#888888", 1.0, "4 3");
  }

  for (const auto& p : points) {
    svg.circle(x_of(p.h_short), y_of(p.h_long), 4, category_color(p.category), "#333333");
  }

  svg.line(kLeft, kTop, kLeft, kTop + kPlotH, "#000000");
  svg.line(kLeft, kTop + kPlotH, kLeft + kPlotW, kTop + kPlotH, "#000000");
  svg.text(kLeft + kPlotW / 2, kHeight - 16, options.x_label, 13, Anchor::Middle);
  svg.text(18, kTop + kPlotH / 2, options.y_label, 13, Anchor::Middle, -90);

  const double legend_x = kLeft + kPlotW + 20;
  double legend_y = kTop + 10;
  for (corpus::Category c : corpus::kAllCategories) {
    svg.circle(legend_x, legend_y, 5, category_color(c), "#333333");
    svg.text(legend_x + 12, legend_y + 4, corpus::to_string(c), 12);
    legend_y += 20;
  }
  return svg.finish();
}

void render_scatter(std::span<const ScatterPoint> points, const std::filesystem::path& out,
                    const ScatterOptions& options) {
  write_text_file(out, scatter_svg(points, options));
}

}  // namespace ambilex::report
