#include "ambilex/report/correlate.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace ambilex::report {

InsufficientData::InsufficientData(std::size_t images)
    : ReportError(fmt::format("correlation needs at least 3 paired images, got {}", images)) {}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: sample sizes differ");
  const std::size_t n = x.size();
  if (n < 3) throw InsufficientData(n);

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  // Two-pass centered sums.
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ZeroVariance();
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

CorrelationInput correlation_input(std::span<const ambiguity::AmbiguityScore> scores,
                                   std::span<const RatingRecord> ratings, RatingDimension dimension) {
  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::map<std::string, Acc> per_image;
  for (const auto& r : ratings) {
    if (r.dimension != dimension) continue;
    auto& acc = per_image[r.image_id];
    acc.sum += r.score;
    ++acc.n;
  }
  std::map<std::string, double> h3;
  for (const auto& s : scores) {
    if (auto v = s.h_long()) h3[s.image_id] = *v;
  }

  CorrelationInput input;
  for (const auto& [image_id, acc] : per_image) {
    auto it = h3.find(image_id);
    if (it == h3.end()) continue;
    input.image_ids.push_back(image_id);
    input.entropy.push_back(it->second);
    input.mean_rating.push_back(acc.sum / static_cast<double>(acc.n));
  }
  return input;
}

double correlate(std::span<const ambiguity::AmbiguityScore> scores, std::span<const RatingRecord> ratings,
                 RatingDimension dimension) {
  const auto input = correlation_input(scores, ratings, dimension);
  return pearson(input.entropy, input.mean_rating);
}

}  // namespace ambilex::report
