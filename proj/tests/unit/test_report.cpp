#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <fmt/format.h>

#include "ambilex/ambiguity/histogram.h"
#include "ambilex/report/charts.h"
#include "ambilex/report/correlate.h"
#include "ambilex/report/rank.h"
#include "ambilex/report/svg.h"
#include "synth.h"

using namespace ambilex;
using namespace ambilex::report;
using ambiguity::AmbiguityScore;

namespace {

AmbiguityScore make_score(std::string id, std::optional<double> h05, std::optional<double> h3) {
  AmbiguityScore s;
  s.image_id = std::move(id);
  if (h05) s.h_by_duration[500] = *h05;
  if (h3) s.h_by_duration[3000] = *h3;
  s.n_by_duration = {{500, 20}, {3000, 20}};
  if (h05 && h3) s.delta_h = *h3 - *h05;
  return s;
}

std::vector<std::string> ids_of(const RankedList& list) {
  std::vector<std::string> out;
  for (const auto& e : list.entries) out.push_back(e.image_id);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Set AMBILEX_UPDATE_GOLDEN=1 to rewrite a golden after reviewing the new output.
void check_golden(const std::string& name, const std::string& actual) {
  const auto path = ambilex::testing::golden_dir() / name;
  if (std::getenv("AMBILEX_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(path, std::ios::binary) << actual;
  }
  REQUIRE_MESSAGE(std::filesystem::exists(path), "missing golden " << path);
  CHECK(slurp(path) == actual);
}

double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  using F = boost::multiprecision::cpp_dec_float_50;
  const auto n = static_cast<long>(x.size());
  F sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const F a = x[i], b = y[i];
    sx += a;
    sy += b;
    sxx += a * a;
    syy += b * b;
    sxy += a * b;
  }
  const F num = n * sxy - sx * sy;
  const F den = boost::multiprecision::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  return static_cast<double>(num / den);
}

std::vector<RatingRecord> ratings_for(const std::vector<AmbiguityScore>& scores, const std::vector<double>& means) {
  std::vector<RatingRecord> out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    // Two raters whose scores average to the wanted mean (integers or halves).
    const int lo = static_cast<int>(std::floor(means[i]));
    const int hi = static_cast<int>(std::ceil(means[i]));
    out.push_back({"p1", scores[i].image_id, RatingDimension::Interestingness, lo});
    out.push_back({"p2", scores[i].image_id, RatingDimension::Interestingness, hi});
  }
  return out;
}

}  // namespace

TEST_SUITE("rank") {
  TEST_CASE("lowest values in order") {
    std::vector<AmbiguityScore> scores;
    const std::vector<double> h3 = {2.10, 4.4, 1.8, 3.3, 1.05, 2.00, 5.0, 1.76};
    for (std::size_t i = 0; i < h3.size(); ++i) scores.push_back(make_score(fmt::format("img{}", i), 1.0, h3[i]));
    const auto low = rank(scores, Metric::H3, Direction::Lowest, 5);
    std::vector<double> values;
    for (const auto& e : low.entries) values.push_back(e.value);
    CHECK(values == std::vector<double>{1.05, 1.76, 1.8, 2.00, 2.10});
    CHECK(low.metric == Metric::H3);
    CHECK(low.direction == Direction::Lowest);
    CHECK_FALSE(low.partition_note);

    const auto all = rank(scores, Metric::H3, Direction::Highest, 100);
    CHECK(all.entries.size() == scores.size());
    CHECK(all.entries.front().value == 5.0);
  }

  TEST_CASE("ties by ascending id, skips missing metric") {
    std::vector<AmbiguityScore> scores = {make_score("b", 1.0, 2.0), make_score("a", 1.0, 2.0),
                                          make_score("c", std::nullopt, 2.0), make_score("d", 2.0, std::nullopt)};
    auto low = rank(scores, Metric::H3, Direction::Lowest, 3);
    CHECK(ids_of(low) == std::vector<std::string>{"a", "b", "c"});
    CHECK(low.skipped == std::vector<std::string>{"d"});
    auto high = rank(scores, Metric::H3, Direction::Highest, 3);
    CHECK(ids_of(high) == std::vector<std::string>{"a", "b", "c"});

    const auto h05 = rank(scores, Metric::H05, Direction::Lowest, 10);
    CHECK(ids_of(h05) == std::vector<std::string>{"a", "b", "d"});
    CHECK(h05.skipped == std::vector<std::string>{"c"});
    const auto delta = rank(scores, Metric::DeltaH, Direction::Highest, 10);
    CHECK(ids_of(delta) == std::vector<std::string>{"a", "b"});
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(rank({}, Metric::H3, Direction::Lowest, 5), EmptyInput);
    std::vector<AmbiguityScore> only_short = {make_score("a", 1.0, std::nullopt)};
    CHECK_THROWS_AS(rank(only_short, Metric::H3, Direction::Lowest, 5), EmptyInput);
    std::vector<AmbiguityScore> one = {make_score("a", 1.0, 2.0)};
    CHECK_THROWS_AS(rank(one, Metric::H3, Direction::Lowest, 0), std::invalid_argument);
  }

  TEST_CASE("metric names") {
    for (auto m : {Metric::H3, Metric::H05, Metric::DeltaH}) CHECK(parse_metric(to_string(m)) == m);
    CHECK_FALSE(parse_metric("H3"));
  }

  TEST_CASE("permutation stability and complement") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<AmbiguityScore> scores;
      const std::size_t n = 5 + rng() % 60;
      for (std::size_t i = 0; i < n; ++i) {
        // Coarse values so ties occur.
        const double v = std::round(u(rng) * 4.0) / 4.0;
        scores.push_back(make_score(fmt::format("id{:03}", i), u(rng), v));
      }
      const std::size_t k = 1 + rng() % n;
      const auto ref = rank(scores, Metric::H3, Direction::Lowest, k);
      auto shuffled = scores;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(rank(shuffled, Metric::H3, Direction::Lowest, k).entries == ref.entries);

      // With ties the complement still holds on the value sequence.
      const auto all_low = rank(scores, Metric::H3, Direction::Lowest, n);
      const auto high = rank(scores, Metric::H3, Direction::Highest, n);
      std::vector<double> low_values, high_values;
      for (const auto& e : all_low.entries) low_values.push_back(e.value);
      for (const auto& e : high.entries) high_values.push_back(e.value);
      std::reverse(high_values.begin(), high_values.end());
      CHECK(low_values == high_values);

      // Id-level complement needs a total order.
      std::vector<AmbiguityScore> distinct;
      for (std::size_t i = 0; i < n; ++i) {
        distinct.push_back(make_score(fmt::format("id{:03}", i), 1.0, 0.01 * static_cast<double>((i * 67) % n)));
      }
      if (k < n) {
        const auto low_k = rank(distinct, Metric::H3, Direction::Lowest, k);
        const auto rest = rank(distinct, Metric::H3, Direction::Highest, n - k);
        CHECK(low_k.entries.back().value < rest.entries.back().value);
        std::vector<std::string> merged = ids_of(low_k);
        for (const auto& id : ids_of(rest)) merged.push_back(id);
        std::sort(merged.begin(), merged.end());
        CHECK(std::adjacent_find(merged.begin(), merged.end()) == merged.end());
        CHECK(merged.size() == n);
      }
    }
  }
}

TEST_SUITE("partition") {
  TEST_CASE("strict above, equality below") {
    std::vector<AmbiguityScore> scores = {make_score("a", 4.0, 4.5), make_score("b", 3.0, 4.0),
                                          make_score("c", 2.0, 3.0), make_score("d", 5.5, 5.0),
                                          make_score("e", 1.0, std::nullopt)};
    const auto above = rank_by_delta_partition(scores, 4.0, Side::Above, Direction::Highest, 10);
    CHECK(ids_of(above) == std::vector<std::string>{"a", "d"});
    CHECK(above.metric == Metric::DeltaH);
    CHECK(above.partition_note == std::optional<std::string>("H3 > 4"));
    const auto below = rank_by_delta_partition(scores, 4.0, Side::Below, Direction::Lowest, 10);
    CHECK(ids_of(below) == std::vector<std::string>{"b", "c"});
    CHECK(below.partition_note == std::optional<std::string>("H3 <= 4"));

    CHECK_THROWS_AS(rank_by_delta_partition(scores, 10.0, Side::Above, Direction::Highest, 5), EmptyInput);
  }

  TEST_CASE("the two sides cover every score with H3") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 8.0);
    std::vector<AmbiguityScore> scores;
    for (int i = 0; i < 300; ++i) {
      const double h3 = i % 25 == 0 ? 4.0 : u(rng);
      scores.push_back(make_score(fmt::format("i{:03}", i), u(rng), h3));
    }
    const auto above = rank_by_delta_partition(scores, 4.0, Side::Above, Direction::Lowest, 1000);
    const auto below = rank_by_delta_partition(scores, 4.0, Side::Below, Direction::Lowest, 1000);
    CHECK(above.entries.size() + below.entries.size() == scores.size());
    for (const auto& e : above.entries) {
      const auto it = std::find_if(scores.begin(), scores.end(), [&](const auto& s) { return s.image_id == e.image_id; });
      CHECK(*it->h_long() > 4.0);
    }
    for (const auto& e : below.entries) {
      const auto it = std::find_if(scores.begin(), scores.end(), [&](const auto& s) { return s.image_id == e.image_id; });
      CHECK(*it->h_long() <= 4.0);
    }
  }
}

TEST_SUITE("charts") {
  TEST_CASE("scatter points") {
    const auto stimuli = ambilex::testing::synth_stimuli(1);
    std::vector<AmbiguityScore> scores = {make_score("rec-001", 1.0, 2.0), make_score("abs-001", std::nullopt, 3.0),
                                          make_score("zzz-404", 1.0, 1.0), make_score("ind-001", 5.0, 5.4)};
    const auto data = scatter_points(scores, stimuli);
    REQUIRE(data.points.size() == 2);
    CHECK(data.points[0].image_id == "rec-001");
    CHECK(data.points[0].category == corpus::Category::Recognizable);
    CHECK(data.points[1].category == corpus::Category::Indeterminate);
    CHECK(data.points[1].h_long == 5.4);
    auto skipped = data.skipped;
    std::sort(skipped.begin(), skipped.end());
    CHECK(skipped == std::vector<std::string>{"abs-001", "zzz-404"});
    CHECK(scatter_points({}, stimuli).points.empty());
  }

  TEST_CASE("histogram chart") {
    ambiguity::TokenHistogram h;
    h.counts = {{"cat", 18}, {"dog", 2}, {"rug", 1}, {"fog", 1}};
    h.total = 22;
    h.n_descriptions = 20;
    const auto svg = histogram_svg(ambiguity::display_histogram(h), "img 500 ms");
    const auto cat = svg.find(">cat<");
    const auto dog = svg.find(">dog<");
    const auto other = svg.find(">[other]<");
    REQUIRE(cat != std::string::npos);
    REQUIRE(dog != std::string::npos);
    REQUIRE(other != std::string::npos);
    CHECK(cat < dog);
    CHECK(dog < other);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg == histogram_svg(ambiguity::display_histogram(h), "img 500 ms"));
    check_golden("histogram.svg", svg);

    const auto empty = histogram_svg(ambiguity::display_histogram(ambiguity::TokenHistogram{}));
    CHECK(empty.find("[other]") == std::string::npos);
    check_golden("histogram_empty.svg", empty);

    const auto dir = ambilex::testing::scratch_dir("charts");
    render_histogram(ambiguity::display_histogram(h), dir / "h.svg", "img 500 ms");
    CHECK(slurp(dir / "h.svg") == svg);
    CHECK_THROWS_AS(render_histogram(ambiguity::display_histogram(h), dir / "missing" / "h.svg"), IoError);
  }

  TEST_CASE("scatter chart") {
    std::vector<ScatterPoint> points = {
        {"a", 1.55, 1.80, corpus::Category::Recognizable},    {"b", 5.07, 5.45, corpus::Category::Indeterminate},
        {"c", 3.0, 4.5, corpus::Category::Dichotomous},       {"d", 4.2, 4.9, corpus::Category::Abstract},
        {"e", 2.5, 3.1, corpus::Category::AbstractFlat},
    };
    const auto svg = scatter_svg(points);
    for (auto c : corpus::kAllCategories) {
      CHECK(svg.find(category_color(c)) != std::string::npos);
      CHECK(svg.find(std::string(">") + std::string(corpus::to_string(c)) + "<") != std::string::npos);
    }
    CHECK(svg.find("H₀.₅ (bits)") != std::string::npos);
    CHECK(svg.find("H₃ (bits)") != std::string::npos);
    std::set<std::string_view> colors;
    for (auto c : corpus::kAllCategories) colors.insert(category_color(c));
    CHECK(colors.size() == 5);

    auto reversed = points;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(scatter_svg(points) == svg);
    check_golden("scatter.svg", svg);
    check_golden("scatter_empty.svg", scatter_svg({}));

    const auto dir = ambilex::testing::scratch_dir("charts_scatter");
    render_scatter(points, dir / "s.svg");
    CHECK(slurp(dir / "s.svg") == svg);
  }

  TEST_CASE("xml escaping") {
    CHECK(xml_escape("a<b>&\"'") == "a&lt;b&gt;&amp;&quot;&apos;");
  }
}

TEST_SUITE("correlate") {
  TEST_CASE("pearson basics") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> up, down;
    for (double v : x) {
      up.push_back(2.5 * v + 1.0);
      down.push_back(-0.5 * v + 7.0);
    }
    CHECK(std::abs(pearson(x, up) - 1.0) < 1e-9);
    CHECK(std::abs(pearson(x, down) + 1.0) < 1e-9);
    const std::vector<double> flat = {3, 3, 3, 3, 3};
    CHECK_THROWS_AS(pearson(x, flat), ZeroVariance);
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 3}), InsufficientData);
    CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2, 3}), std::invalid_argument);
  }

  TEST_CASE("matches the high-precision oracle") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x(20), y(20);
      for (auto& v : x) v = u(rng);
      for (auto& v : y) v = 1.0 + u(rng);
      CHECK(std::abs(pearson(x, y) - oracle_pearson(x, y)) < 1e-9);
    }
  }

  TEST_CASE("per-image means and affine ratings") {
    std::vector<AmbiguityScore> scores;
    std::vector<double> means;
    for (int i = 0; i < 6; ++i) {
      scores.push_back(make_score(fmt::format("im{}", i), 1.0, 1.0 + i));
      means.push_back(1.0 + i);  // affine in H3
    }
    auto ratings = ratings_for(scores, means);
    ratings.push_back({"p3", "im0", RatingDimension::Engagement, 7});
    ratings.push_back({"p3", "unscored", RatingDimension::Interestingness, 7});
    CHECK(std::abs(correlate(scores, ratings, RatingDimension::Interestingness) - 1.0) < 1e-9);

    const auto input = correlation_input(scores, ratings, RatingDimension::Interestingness);
    CHECK(input.image_ids.size() == 6);
    CHECK(input.mean_rating[2] == 3.0);
    CHECK_THROWS_AS(correlate(scores, ratings, RatingDimension::Engagement), InsufficientData);

    std::vector<double> flat(6, 4.0);
    CHECK_THROWS_AS(correlate(scores, ratings_for(scores, flat), RatingDimension::Interestingness), ZeroVariance);

    // Mean over raters, not median.
    std::vector<RatingRecord> skewed = {{"p1", "im0", RatingDimension::Powerfulness, 1},
                                        {"p2", "im0", RatingDimension::Powerfulness, 1},
                                        {"p3", "im0", RatingDimension::Powerfulness, 7}};
    CHECK(correlation_input(scores, skewed, RatingDimension::Powerfulness).mean_rating.at(0) == doctest::Approx(3.0));
  }

  TEST_CASE("ratings file") {
    const auto dir = ambilex::testing::scratch_dir("ratings");
    {
      std::ofstream out(dir / "r.jsonl");
      out << R"({"participant_id":"p1","image_id":"a","dimension":"interestingness","score":5})" << "\n\n"
          << R"({"participant_id":"p2","image_id":"a","dimension":"engagement","score":1})" << "\n";
    }
    const auto records = load_ratings(dir / "r.jsonl");
    REQUIRE(records.size() == 2);
    CHECK(records[0] == RatingRecord{"p1", "a", RatingDimension::Interestingness, 5});
    CHECK(records[1].dimension == RatingDimension::Engagement);
    CHECK_THROWS_AS(load_ratings(dir / "r.jsonl", RatingScale{2, 7}), corpus::MalformedRecord);
    CHECK_THROWS_AS(load_ratings(dir / "nope.jsonl"), FileNotFound);

    for (const char* bad : {R"({"participant_id":"p","image_id":"a","dimension":"interestingness","score":8})",
                            R"({"participant_id":"p","image_id":"a","dimension":"beauty","score":3})",
                            R"({"participant_id":"p","image_id":"a","dimension":"engagement","score":3.5})",
                            R"({"image_id":"a","dimension":"engagement","score":3})", "not json"}) {
      std::ofstream(dir / "bad.jsonl") << bad << "\n";
      CHECK_THROWS_AS(load_ratings(dir / "bad.jsonl"), corpus::MalformedRecord);
    }
    for (auto d : {RatingDimension::Interestingness, RatingDimension::Powerfulness, RatingDimension::Engagement}) {
      CHECK(parse_dimension(to_string(d)) == d);
    }
  }
}
