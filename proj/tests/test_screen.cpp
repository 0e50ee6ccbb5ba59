#include <doctest.h>

#include <algorithm>
#include <random>

#include "aisdb/errors.hpp"
#include "aisdb/screen.hpp"
#include "aisdb/synth.hpp"
#include "support/oracles.hpp"

using namespace aisdb;

namespace {

Track with_sogs(const std::vector<double>& sogs) {
  std::vector<GeoPoint> pts;
  for (std::size_t i = 0; i < sogs.size(); ++i) pts.push_back({0.0, 0.003 * static_cast<double>(i)});
  auto t = oracle::track_through(pts);
  for (std::size_t i = 0; i < sogs.size(); ++i) t.records[i].sog = sogs[i];
  return t;
}

Track straight(std::size_t n, double step_deg = 0.003) {
  std::vector<GeoPoint> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({-123.0, 40.0 + step_deg * static_cast<double>(i)});
  return oracle::track_through(pts);
}

// Mean of raw-degree turn cosines, computed independently of the library.
std::optional<double> complexity_oracle(const Track& t) {
  double sum = 0;
  int n = 0;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const double ax = t.records[i].pos.lon - t.records[i - 1].pos.lon;
    const double ay = t.records[i].pos.lat - t.records[i - 1].pos.lat;
    const double bx = t.records[i + 1].pos.lon - t.records[i].pos.lon;
    const double by = t.records[i + 1].pos.lat - t.records[i].pos.lat;
    const double na = std::hypot(ax, ay), nb = std::hypot(bx, by);
    if (na == 0 || nb == 0) continue;
    sum += (ax * bx + ay * by) / (na * nb);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

}  // namespace

TEST_CASE("navigation_runs") {
  CHECK(navigation_runs(with_sogs({0, 5, 5, 0, 7})) == std::vector<NavigationRun>{{1, 2}, {4, 1}});
  CHECK(navigation_runs(with_sogs({0, 0, 0})).empty());
  CHECK(navigation_runs(with_sogs({3, 3, 3, 3})) == std::vector<NavigationRun>{{0, 4}});
  CHECK(navigation_runs(Track{}).empty());
  CHECK(longest_navigation_run(with_sogs({1, 0, 1, 1, 1, 0, 1, 1})) == 3);
}

TEST_CASE("route_complexity: examples") {
  CHECK(*route_complexity(straight(10)) == doctest::Approx(1.0));
  auto zigzag = oracle::track_through({{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 2}});
  CHECK(*route_complexity(zigzag) == doctest::Approx(0.0).epsilon(1e-15));
  auto one_turn = oracle::track_through({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}});
  CHECK(*route_complexity(one_turn) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(route_complexity(straight(2)), PreconditionError);
}

TEST_CASE("route_complexity: repeated positions are skipped, all-repeated is undefined") {
  auto t = oracle::track_through({{0, 0}, {1, 0}, {1, 0}, {2, 0}, {2, 1}});
  // Defined cosines: at index 3 only ((1,0)->(2,0)->(2,1)) = 0.
  CHECK(*route_complexity(t) == doctest::Approx(0.0));
  CHECK_FALSE(route_complexity(oracle::track_through({{1, 1}, {1, 1}, {1, 1}})).has_value());
}

TEST_CASE("route_complexity matches an independent evaluation on random walks") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SynthSpec spec;
    spec.kind = SynthKind::RandomWalk;
    spec.length_minutes = 200;
    spec.seed = seed;
    const auto t = generate(spec);
    CHECK(*route_complexity(t) == doctest::Approx(*complexity_oracle(t)).epsilon(1e-12));
  }
}

TEST_CASE("route_complexity: translation and uniform scaling invariance") {
  SynthSpec spec;
  spec.kind = SynthKind::RandomWalk;
  spec.length_minutes = 100;
  const auto t = generate(spec);
  const double base = *route_complexity(t);
  for (double s : {0.01, 0.5, 3.0}) {
    Track moved = t;
    for (auto& r : moved.records) {
      r.pos.lon = 10.0 + s * (r.pos.lon + 123.0);
      r.pos.lat = -5.0 + s * (r.pos.lat - 40.0);
    }
    CHECK(*route_complexity(moved) == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("classify_noise: examples") {
  const ScreenConfig cfg;
  CHECK(classify_noise(straight(50), cfg) == NoiseClass::Clean);

  auto jump = straight(50);
  for (std::size_t i = 25; i < jump.size(); ++i) jump.records[i].pos.lat += 0.5;  // ~55 km
  CHECK(classify_noise(jump, cfg) == NoiseClass::Discontinuous);

  CHECK(classify_noise(straight(50, 0.03), cfg) == NoiseClass::Loose);  // ~3.3 km spacing

  SynthSpec walk;
  walk.kind = SynthKind::RandomWalk;
  walk.length_minutes = 300;
  const auto tangled = generate(walk);
  REQUIRE(*complexity_oracle(tangled) < 0.3);
  CHECK(classify_noise(tangled, cfg) == NoiseClass::Tangled);

  CHECK(classify_noise(oracle::track_through({{1, 1}, {1, 1}, {1, 1}}), cfg) == NoiseClass::Tangled);
  CHECK_THROWS_AS(classify_noise(straight(2), cfg), PreconditionError);
}

TEST_CASE("classify_noise: evaluation order puts Discontinuous first") {
  // Tangled and with a jump: the jump wins.
  auto t = oracle::track_through({{0, 0}, {0.001, 0}, {0.001, 0.001}, {0, 0.001}, {0, 0}, {1, 0}});
  CHECK(classify_noise(t, ScreenConfig{}) == NoiseClass::Discontinuous);
}

TEST_CASE("screen_track: acceptance rule") {
  const ScreenConfig cfg;
  auto r600 = screen_track(straight(600), cfg);
  CHECK(r600.accepted);
  CHECK(r600.longest_nav_run == 600);
  CHECK(r600.noise_class == NoiseClass::Clean);
  CHECK(*r600.complexity == doctest::Approx(1.0));

  CHECK_FALSE(screen_track(straight(100), cfg).accepted);

  // Long track split by a stationary stretch: longest run below min_run.
  auto split = straight(800);
  for (std::size_t i = 400; i < 410; ++i) split.records[i].sog = 0;
  auto rs = screen_track(split, cfg);
  CHECK(rs.longest_nav_run == 400);
  CHECK_FALSE(rs.accepted);

  // Staircase N,N,E,E,...: a 90-degree turn at every other point, complexity 0.5.
  std::vector<GeoPoint> pts{{0, 0}};
  const double d = 0.003;
  for (int i = 0; i < 700; ++i) {
    auto p = pts.back();
    if ((i / 2) % 2 == 0) {
      p.lat += d;
    } else {
      p.lon += d;
    }
    pts.push_back(p);
  }
  auto zig = screen_track(oracle::track_through(pts), cfg);
  CHECK(*zig.complexity == doctest::Approx(0.5).epsilon(0.01));
  CHECK(zig.noise_class == NoiseClass::Tangled);
  CHECK_FALSE(zig.accepted);
}

TEST_CASE("screen_track: short tracks are total and rejected") {
  for (std::size_t n : {0u, 1u, 2u}) {
    auto r = screen_track(straight(n), ScreenConfig{});
    CHECK_FALSE(r.accepted);
    CHECK_FALSE(r.noise_class.has_value());
    CHECK(r.records == n);
  }
}

TEST_CASE("acceptance is monotone in thresholds") {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SynthSpec spec;
    spec.kind = seed % 3 == 0 ? SynthKind::RandomWalk : SynthKind::Arc;
    spec.turn_rate_deg = 0.2 * static_cast<double>(seed % 7);
    spec.length_minutes = 300 + 30 * (seed % 10);
    spec.seed = seed;
    const auto t = generate(spec);
    ScreenConfig strict;
    strict.min_run = 400;
    strict.complexity_threshold = 0.9;
    if (!screen_track(t, strict).accepted) continue;
    ScreenConfig loose = strict;
    loose.min_run = 200;
    loose.complexity_threshold = 0.5;
    CHECK(screen_track(t, loose).accepted);
  }
}

TEST_CASE("ScreenConfig validation") {
  ScreenConfig c;
  CHECK_NOTHROW(c.validate());
  c.complexity_threshold = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.min_run = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.gap_km_threshold = -1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("injected defects are recovered exactly") {
  // Defects exceed thresholds by at least 2x; each class is recovered with no confusion.
  const ScreenConfig cfg;
  std::size_t correct = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SynthSpec spec;
    spec.kind = SynthKind::Linear;
    spec.length_minutes = 600;
    spec.heading_deg = 30.0 * static_cast<double>(seed);
    spec.seed = seed;
    const auto clean = generate(spec);
    ++total;
    correct += classify_noise(clean, cfg) == NoiseClass::Clean;

    auto disc = clean;
    for (std::size_t i = 300; i < disc.size(); ++i) disc.records[i].pos.lat += 0.25;  // ~28 km step
    ++total;
    correct += classify_noise(disc, cfg) == NoiseClass::Discontinuous;

    Track loose{clean.mmsi, {}};
    for (std::size_t i = 0; i < clean.size(); i += 7) loose.records.push_back(clean.records[i]);  // ~4.3 km spacing
    ++total;
    correct += classify_noise(loose, cfg) == NoiseClass::Loose;

    SynthSpec w = spec;
    w.kind = SynthKind::RandomWalk;
    ++total;
    correct += classify_noise(generate(w), cfg) == NoiseClass::Tangled;
  }
  CHECK(correct == total);
}
