#include <doctest.h>

#include <json.hpp>

#include "aisdb/artifacts.hpp"
#include "aisdb/errors.hpp"
#include "aisdb/pipeline.hpp"
#include "aisdb/synth.hpp"
#include "support/files.hpp"
#include "support/oracles.hpp"

using namespace aisdb;
using json = nlohmann::json;

namespace {

std::vector<Track> small_corpus() {
  std::vector<Track> out;
  for (std::size_t i = 0; i < 6; ++i) {
    ScenarioTrack sc;
    sc.spec.kind = i == 5 ? SynthKind::RandomWalk : SynthKind::Arc;
    sc.spec.turn_rate_deg = 0.2;
    sc.spec.length_minutes = i == 4 ? 200 : 700;
    sc.spec.seed = i;
    sc.spec.mmsi = static_cast<Mmsi>(300000000 + i);
    sc.spec.start = {-123.5 + 0.3 * static_cast<double>(i), 36.0};
    sc.spikes = {{50, 80}};
    sc.gaps = {{120, 6}};
    out.push_back(build_scenario_track(sc));
  }
  return out;
}

PipelineConfig config_for(const std::filesystem::path& in, const std::filesystem::path& out) {
  PipelineConfig c;
  c.input = in;
  c.output = out;
  return c;
}

}  // namespace

TEST_CASE("pipeline: screen, clean, database and reports") {
  oracle::TempDir dir("pipe");
  testfs::write_raw(dir.path() / "raw.csv", small_corpus());
  const auto res = run_pipeline(config_for(dir.path() / "raw.csv", dir.path() / "run"));

  CHECK(res.ingest.vessels == 6);
  REQUIRE(res.screen.size() == 6);
  std::size_t accepted = 0;
  for (const auto& r : res.screen) accepted += r.accepted;
  CHECK(accepted == 4);  // the short track and the random walk are rejected
  CHECK(res.screen[4].longest_nav_run < 500);
  CHECK(res.screen[5].noise_class == NoiseClass::Tangled);

  REQUIRE(res.database.size() == 4);
  for (const auto& rep : res.clean) {
    CHECK(rep.sog_corrections.size() == 1);
    CHECK(rep.records_inserted == 5);
  }
  CHECK(res.summary.total_trajectories == 4);
  CHECK(res.summary.total_records == 4 * 700);

  const auto run = dir.path() / "run";
  for (const char* f : {"manifest.json", "ingest_report.json", "screen_report.json", "clean_report.json",
                        "stats/summary.json", "stats/fig14_cog.csv", "stats/fig15_sog.csv", "stats/fig16_len.csv",
                        "stats/fig17_len_interp.csv", "stats/fig18_interp_hist.csv"}) {
    CAPTURE(f);
    CHECK(std::filesystem::exists(run / f));
  }
  const auto db = read_database(run / "database");
  CHECK(db.errors.empty());
  CHECK(db.tracks.size() == 4);
  const auto manifest = json::parse(testfs::slurp(run / "manifest.json"));
  CHECK(manifest.at("seed") == 42);
  CHECK(manifest.at("screen").at("min_run") == 500);
  CHECK(manifest.at("predict").at("ridge") == 1e-12);
}

TEST_CASE("pipeline: deterministic and thread-count independent") {
  oracle::TempDir dir("pipe_det");
  testfs::write_raw(dir.path() / "raw.csv", small_corpus());
  auto a = config_for(dir.path() / "raw.csv", dir.path() / "a");
  a.jobs = 1;
  a.predict = true;
  a.eval.samples = 40;
  a.eval.hidden = 20;
  a.eval.stride = 25;
  auto b = a;
  b.output = dir.path() / "b";
  b.jobs = 3;
  run_pipeline(a);
  run_pipeline(b);
  const auto ta = testfs::read_tree(a.output), tb = testfs::read_tree(b.output);
  CHECK(ta.size() > 10);
  CHECK(ta == tb);
  CHECK(ta.contains("predict/index.json"));
  CHECK(ta.contains("predict/300000000/errors.csv"));
}

TEST_CASE("pipeline: directory input and empty input") {
  oracle::TempDir dir("pipe_dir");
  std::filesystem::create_directories(dir.path() / "in");
  const auto empty = run_pipeline(config_for(dir.path() / "in", dir.path() / "out0"));
  CHECK(empty.summary.total_records == 0);
  CHECK(empty.database.empty());
  CHECK(std::filesystem::exists(dir.path() / "out0" / "stats" / "summary.json"));

  const auto corpus = small_corpus();
  testfs::write_raw(dir.path() / "in" / "a.csv", {corpus[0], corpus[1]});
  testfs::write_raw(dir.path() / "in" / "b.csv", {corpus[2]});
  const auto res = run_pipeline(config_for(dir.path() / "in", dir.path() / "out1"));
  CHECK(res.ingest.vessels == 3);
  CHECK(res.database.size() == 3);
}

TEST_CASE("pipeline: bad configuration writes nothing") {
  oracle::TempDir dir("pipe_bad");
  testfs::write_raw(dir.path() / "raw.csv", small_corpus());
  auto c = config_for(dir.path() / "raw.csv", dir.path() / "out");
  c.screen.complexity_threshold = -1;
  CHECK_THROWS_AS(run_pipeline(c), ConfigError);
  CHECK_FALSE(std::filesystem::exists(dir.path() / "out"));

  auto missing = config_for(dir.path() / "nope.csv", dir.path() / "out");
  CHECK_THROWS_AS(run_pipeline(missing), IoError);
  CHECK_FALSE(std::filesystem::exists(dir.path() / "out"));

  testfs::spit(dir.path() / "bad.csv", "XCoord,YCoord,SOG\n1,2,3\n");
  CHECK_THROWS_AS(run_pipeline(config_for(dir.path() / "bad.csv", dir.path() / "out")), SchemaError);
  CHECK_FALSE(std::filesystem::exists(dir.path() / "out"));
}

TEST_CASE("config json: round trip, precedence base, rejects unknown keys and wrong types") {
  PipelineConfig c;
  c.input = "in.csv";
  c.seed = 7;
  c.screen.min_run = 321;
  c.clean.cog_mode = InterpolatedCog::ChordBearing;
  c.eval.ridge = 1e-3;
  c.eval.features = FeatureMode::PositionSogCog;
  c.interp_bin_width = 25;
  const auto back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));

  PipelineConfig base;
  base.screen.gap_km_threshold = 42;
  const auto merged = config_from_json(json{{"screen", {{"min_run", 10}}}}, base);
  CHECK(merged.screen.min_run == 10);
  CHECK(merged.screen.gap_km_threshold == 42);

  CHECK_THROWS_AS(config_from_json(json{{"screen", {{"min_runs", 10}}}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"seed", "x"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"screen", {{"min_run", -3}}}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::array()), ConfigError);

  oracle::TempDir dir("cfg");
  testfs::spit(dir.path() / "c.json", "{ not json");
  CHECK_THROWS_AS(load_config_file(dir.path() / "c.json"), ConfigError);
  CHECK_THROWS_AS(load_config_file(dir.path() / "missing.json"), ConfigError);
}

TEST_CASE("scenario json") {
  const auto sc = scenario_from_json(json::parse(R"({"tracks":[{"kind":"arc","length":50,"turn_rate":2,
      "mmsi":5,"spikes":[{"at":3,"magnitude":60}],"gaps":[{"start":10,"minutes":4}]}]})"));
  REQUIRE(sc.size() == 1);
  CHECK(sc[0].spec.kind == SynthKind::Arc);
  CHECK(sc[0].spec.length_minutes == 50);
  CHECK(sc[0].spec.mmsi == 5u);
  CHECK(sc[0].spikes.size() == 1);
  CHECK(sc[0].gaps[0].minutes == 4);
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"tracks":[{"kind":"arc","len":50}]})")), ConfigError);
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"tracks":3})")), ConfigError);
}
