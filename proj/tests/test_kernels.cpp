#include <doctest.h>

#include "aisdb/kernels.hpp"
#include "aisdb/synth.hpp"

using namespace aisdb;
using kernels::Execution;

namespace {

std::vector<Track> corpus(std::size_t n) {
  std::vector<Track> out;
  for (std::size_t i = 0; i < n; ++i) {
    ScenarioTrack sc;
    sc.spec.kind = static_cast<SynthKind>(i % 3);
    sc.spec.length_minutes = 300 + 40 * (i % 9);
    sc.spec.turn_rate_deg = 0.25;
    sc.spec.seed = i;
    sc.spec.mmsi = static_cast<Mmsi>(200000000 + i);
    sc.spikes = {{20 + i % 7, 70}};
    sc.gaps = {{100, 2 + i % 6}, {200, 5}};
    out.push_back(build_scenario_track(sc));
  }
  return out;
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference") {
  const auto tracks = corpus(37);
  for (std::size_t threads : {1u, 2u, 4u}) {
    kernels::set_thread_count(threads);
    ScreenConfig sc;
    sc.min_run = 100;
    const auto s1 = kernels::screen_all(tracks, sc, Execution::Serial);
    const auto s2 = kernels::screen_all(tracks, sc, Execution::Parallel);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
      CHECK(s1[i].mmsi == s2[i].mmsi);
      CHECK(s1[i].accepted == s2[i].accepted);
      CHECK(s1[i].complexity == s2[i].complexity);
      CHECK(s1[i].noise_class == s2[i].noise_class);
      CHECK(s1[i].longest_nav_run == s2[i].longest_nav_run);
    }

    const auto c1 = kernels::clean_all(tracks, CleanConfig{}, Execution::Serial);
    const auto c2 = kernels::clean_all(tracks, CleanConfig{}, Execution::Parallel);
    CHECK(c1.tracks == c2.tracks);
    REQUIRE(c1.reports.size() == c2.reports.size());
    for (std::size_t i = 0; i < c1.reports.size(); ++i) {
      CHECK(c1.reports[i].sog_corrections == c2.reports[i].sog_corrections);
      CHECK(c1.reports[i].records_inserted == c2.reports[i].records_inserted);
      CHECK(c1.reports[i].pairs_found == c2.reports[i].pairs_found);
    }

    const auto m1 = kernels::summarize_all(c1.tracks, c1.reports, 50, Execution::Serial);
    const auto m2 = kernels::summarize_all(c1.tracks, c1.reports, 50, Execution::Parallel);
    CHECK(m1 == m2);
    CHECK(m1 == summarize(c1.tracks, c1.reports, 50));
  }
  kernels::set_thread_count(0);
}

TEST_CASE("parallel evaluation matches serial and the plain loop") {
  SynthSpec spec;
  spec.kind = SynthKind::Arc;
  spec.length_minutes = 260;
  const auto t = generate(spec);
  EvalConfig cfg;
  cfg.samples = 60;
  cfg.hidden = 25;
  cfg.stride = 4;
  kernels::set_thread_count(3);
  const auto a = kernels::evaluate_track(t, cfg, Execution::Serial);
  const auto b = kernels::evaluate_track(t, cfg, Execution::Parallel);
  const auto c = evaluate_track(t, cfg);
  CHECK(a.predictions == b.predictions);
  CHECK(a.predictions == c.predictions);
  CHECK(a.histogram == b.histogram);
  CHECK(a.skipped == b.skipped);

  cfg.retrain_each_step = false;
  CHECK(kernels::evaluate_track(t, cfg, Execution::Parallel).predictions ==
        kernels::evaluate_track(t, cfg, Execution::Serial).predictions);
  kernels::set_thread_count(0);
}

TEST_CASE("kernels handle empty input") {
  CHECK(kernels::screen_all({}, ScreenConfig{}).empty());
  CHECK(kernels::clean_all({}, CleanConfig{}).tracks.empty());
  CHECK(kernels::summarize_all({}, {}, 50).total_records == 0);
}
