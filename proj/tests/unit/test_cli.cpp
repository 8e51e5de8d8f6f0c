#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ambilex/ambiguity/scores_csv.h"
#include "ambilex/corpus/io.h"
#include "cli.h"
#include "study_fixture.h"

namespace fs = std::filesystem;
using ambilex::testing::CellSpec;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ambilex");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ambilex::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Three scored images plus one with a failing participant.
struct Corpus {
  fs::path dir, stimuli, responses;

  explicit Corpus(const std::string& name) : dir(ambilex::testing::scratch_dir(name)) {
    stimuli = dir / "stimuli.jsonl";
    responses = dir / "responses.jsonl";
    ambilex::corpus::save_stimuli(stimuli, ambilex::testing::synth_stimuli(2));
    const std::vector<CellSpec> cells = {
        {"rec-001", 500, {{"tree", 9}, {"bird", 1}}},
        {"rec-001", 3000, {{"tree", 5}, {"bird", 5}}},
        {"ind-001", 500, {{"tree", 2}, {"bird", 2}, {"owl", 2}, {"moon", 2}}},
        {"ind-001", 3000, {{"tree", 1}, {"bird", 1}, {"owl", 1}, {"moon", 1}, {"house", 1}, {"lamp", 1}}},
        {"abs-001", 500, {{"cloud", 6}}},
        {"abs-001", 3000, {{"cloud", 3}, {"river", 3}}},
    };
    auto set = ambilex::testing::synth_responses(cells, 3);
    auto failed = set.records.front();
    failed.participant_id = "failer";
    failed.vigilance_passed = false;
    failed.raw_text = "a dragon";
    set.records.push_back(failed);
    ambilex::corpus::save_responses(responses, set.records);
  }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"ingest", "--stimuli", "x"}).code == 2);
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("analyze") != std::string::npos);
  }

  TEST_CASE("ingest") {
    Corpus c("cli_ingest");
    auto r = run({"ingest", "--stimuli", c.stimuli.string(), "--responses", c.responses.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("stimuli: 10\n") != std::string::npos);
    CHECK(r.out.find("records: 46 of 47 after vigilance filter\n") != std::string::npos);
    CHECK(r.out.find("cells: 6\n") != std::string::npos);
    CHECK(r.out.find("rec-001\t500\t10\n") != std::string::npos);

    r = run({"ingest", "--stimuli", c.stimuli.string(), "--responses", c.responses.string(), "--no-vigilance-filter"});
    CHECK(r.out.find("records: 47 (vigilance filter off)\n") != std::string::npos);

    r = run({"ingest", "--stimuli", (c.dir / "missing").string(), "--responses", c.responses.string()});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("error: ", 0) == 0);
  }

  TEST_CASE("tokens") {
    const auto r = run({"tokens", "--text", "I'm not sure but two cats on a killer whale"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["hedge_count"] == 1);
    CHECK(j["tokens"].is_array());
    CHECK(j["tokens"].size() >= 1);
  }

  TEST_CASE("analyze, rank, plot, correlate") {
    Corpus c("cli_pipeline");
    const auto scores = c.dir / "scores.csv";
    auto r = run({"analyze", "--stimuli", c.stimuli.string(), "--responses", c.responses.string(), "--out",
                  scores.string(), "--min-responses", "4"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const auto rows = ambilex::ambiguity::load_scores_csv(scores);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].score.image_id == "abs-001");
    CHECK(*rows[0].score.h_short() == 0.0);
    CHECK(*rows[0].score.h_long() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(*rows[1].score.h_short() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_FALSE(rows[1].score.low_confidence);

    r = run({"analyze", "--stimuli", c.stimuli.string(), "--responses", c.responses.string(), "--out",
             scores.string(), "--thresholds", "h05=1.5,h3=1.5"});
    REQUIRE(r.code == 0);
    CHECK(ambilex::ambiguity::load_scores_csv(scores)[1].region == ambilex::ambiguity::Region::IndeterminateRegion);
    CHECK(run({"analyze", "--stimuli", c.stimuli.string(), "--responses", c.responses.string(), "--out",
               scores.string(), "--thresholds", "h3"})
              .code == 2);

    r = run({"rank", "--scores", scores.string(), "--metric", "h3", "--bottom", "2", "--top", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out ==
          "lowest 2 by h3\n"
          "    1. abs-001  1.00\n"
          "    2. rec-001  1.00\n"
          "highest 1 by h3\n"
          "    1. ind-001  2.58\n");

    r = run({"rank", "--scores", scores.string(), "--metric", "delta", "--h3-above", "1.0", "--top", "5"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("(H3 > 1)") != std::string::npos);
    CHECK(r.out.find("ind-001") != std::string::npos);
    CHECK(r.out.find("rec-001") == std::string::npos);
    CHECK(run({"rank", "--scores", scores.string(), "--metric", "h3", "--h3-above", "1", "--top", "5"}).code == 2);
    CHECK(run({"rank", "--scores", scores.string(), "--metric", "delta", "--h3-above", "1", "--h3-below", "1",
               "--top", "5"})
              .code == 2);
    CHECK(run({"rank", "--scores", scores.string()}).code == 2);
    CHECK(run({"rank", "--scores", scores.string(), "--metric", "entropy", "--top", "1"}).code == 2);
    CHECK(run({"rank", "--scores", scores.string(), "--metric", "delta", "--h3-above", "9", "--top", "1"}).code == 1);

    const auto scatter = c.dir / "scatter.svg";
    r = run({"plot", "--type", "scatter", "--scores", scores.string(), "--stimuli", c.stimuli.string(), "--out",
             scatter.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(r.out.find("wrote 3 points") != std::string::npos);
    CHECK(slurp(scatter).find("<svg") != std::string::npos);

    const auto hist = c.dir / "hist.svg";
    r = run({"plot", "--type", "histogram", "--stimuli", c.stimuli.string(), "--responses", c.responses.string(),
             "--image", "rec-001", "--duration", "500", "--out", hist.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(r.out.find("wrote 2 bars") != std::string::npos);  // tree, and bird in [other]
    const auto svg = slurp(hist);
    CHECK(svg.find(">tree<") != std::string::npos);
    CHECK(svg.find(">[other]<") != std::string::npos);
    CHECK(run({"plot", "--type", "pie", "--out", hist.string()}).code == 2);

    const auto ratings = c.dir / "ratings.jsonl";
    {
      std::ofstream out(ratings);
      // Mean interestingness rises with H3: abs/rec at 1.0 bits, ind at 2.58.
      out << R"({"participant_id":"r1","image_id":"abs-001","dimension":"interestingness","score":2})" << "\n"
          << R"({"participant_id":"r1","image_id":"rec-001","dimension":"interestingness","score":3})" << "\n"
          << R"({"participant_id":"r1","image_id":"ind-001","dimension":"interestingness","score":6})" << "\n";
    }
    r = run({"correlate", "--scores", scores.string(), "--ratings", ratings.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(r.out.rfind("r = 0.9", 0) == 0);
    CHECK(r.out.find("(H3 vs mean interestingness, 3 images)") != std::string::npos);
    r = run({"correlate", "--scores", scores.string(), "--ratings", ratings.string(), "--dimension", "engagement"});
    CHECK(r.code == 1);
  }

  TEST_CASE("export from an event log") {
    const auto dir = ambilex::testing::scratch_dir("cli_export");
    const auto log = dir / "events.jsonl";
    {
      ambilex::study::StudyService svc(ambilex::testing::seeded_config(), ambilex::testing::synth_stimuli(40),
                                       ambilex::testing::log_options(log));
      ambilex::testing::run_session(svc, svc.create_session("p1").session_id, 1);
      svc.export_responses(dir / "direct.jsonl");
    }
    auto r = run({"export", "--log", log.string(), "--out", (dir / "out.jsonl").string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(r.out.find("exported 30 records") != std::string::npos);
    CHECK(slurp(dir / "out.jsonl") == slurp(dir / "direct.jsonl"));
    for (const auto& rec : ambilex::corpus::load_responses(dir / "out.jsonl").records) CHECK_FALSE(rec.vigilance_passed);

    // The logged completion decides vigilance; the config only sets the exposure tolerance.
    std::ofstream(dir / "strict.json") << R"({"vigilance_pass_min":1,"exposure_tolerance":-0.0})";
    r = run({"export", "--log", log.string(), "--out", (dir / "strict.jsonl").string(), "--config",
             (dir / "strict.json").string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    for (const auto& rec : ambilex::corpus::load_responses(dir / "strict.jsonl").records) {
      CHECK_FALSE(rec.vigilance_passed);
      CHECK_FALSE(rec.exposure_flagged);  // measured equals nominal
    }
    std::ofstream(dir / "bad.json") << R"({"exposure_tolerance":-1})";
    CHECK(run({"export", "--log", log.string(), "--out", (dir / "bad.jsonl").string(), "--config",
               (dir / "bad.json").string()})
              .code == 1);

    CHECK(run({"export", "--log", (dir / "none.jsonl").string(), "--out", (dir / "x.jsonl").string()}).code == 1);
  }

  TEST_CASE("serve fails fast on bad inputs") {
    const auto dir = ambilex::testing::scratch_dir("cli_serve");
    CHECK(run({"serve", "--config", (dir / "none.json").string(), "--stimuli", "x", "--log", "y"}).code == 1);
    CHECK(run({"serve", "--stimuli", "x", "--log", "y"}).code == 2);
  }
}
