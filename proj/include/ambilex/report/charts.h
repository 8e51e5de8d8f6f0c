#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ambilex/ambiguity/histogram.h"
#include "ambilex/ambiguity/score.h"
#include "ambilex/corpus/types.h"

namespace ambilex::report {

struct ScatterPoint {
  std::string image_id;
  double h_short = 0.0;
  double h_long = 0.0;
  corpus::Category category = corpus::Category::Recognizable;
};

struct ScatterData {
  std::vector<ScatterPoint> points;
  std::vector<std::string> skipped;  // missing an entropy or a stimulus record
};

ScatterData scatter_points(std::span<const ambiguity::AmbiguityScore> scores, const corpus::StimulusSet& stimuli);

std::string_view category_color(corpus::Category category);

// Bars in display order, "[other]" last when it has mass.
std::string histogram_svg(const ambiguity::DisplayHistogram& display, std::string_view title = {});
void render_histogram(const ambiguity::DisplayHistogram& display, const std::filesystem::path& out,
                      std::string_view title = {});

struct ScatterOptions {
  std::string x_label = "H₀.₅ (bits)";
  std::string y_label = "H₃ (bits)";
  ambiguity::RegionThresholds thresholds;  // drawn as dashed guides
};

std::string scatter_svg(std::span<const ScatterPoint> points, const ScatterOptions& options = {});
void render_scatter(std::span<const ScatterPoint> points, const std::filesystem::path& out,
                    const ScatterOptions& options = {});

}  // namespace ambilex::report
