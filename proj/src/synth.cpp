#include "aisdb/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "aisdb/errors.hpp"
#include "aisdb/random.hpp"

namespace aisdb {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double wrap_heading(double deg) {
  double h = std::fmod(deg, 360.0);
  if (h < 0.0) h += 360.0;
  return h >= 360.0 ? 0.0 : h;
}

AisRecord make_record(const SynthSpec& spec, std::size_t minute, GeoPoint pos, double cog) {
  AisRecord r;
  r.mmsi = spec.mmsi;
  r.pos = pos;
  r.sog = spec.speed_knots;
  r.cog = wrap_heading(cog);
  r.rot = 0.0;
  r.t = spec.start_time + static_cast<std::int64_t>(minute);
  return r;
}

// Ground heading of a lon/lat-plane direction alpha at latitude lat.
double ground_heading(double alpha_deg, double lat_deg) {
  return std::atan2(std::sin(alpha_deg * kDeg) * std::cos(lat_deg * kDeg), std::cos(alpha_deg * kDeg)) / kDeg;
}

Track linear(const SynthSpec& spec) {
  const double step_km = knots_to_km_per_min(spec.speed_knots);
  const double h = spec.heading_deg * kDeg;
  const double dlon = step_km * std::sin(h) / (kSynthKmPerDegree * std::cos(spec.start.lat * kDeg));
  const double dlat = step_km * std::cos(h) / kSynthKmPerDegree;
  Track t{spec.mmsi, {}};
  t.records.reserve(spec.length_minutes);
  for (std::size_t i = 0; i < spec.length_minutes; ++i) {
    const auto k = static_cast<double>(i);
    t.records.push_back(
        make_record(spec, i, GeoPoint{spec.start.lon + k * dlon, spec.start.lat + k * dlat}, spec.heading_deg));
  }
  return t;
}

Track arc(const SynthSpec& spec) {
  const double step_km = knots_to_km_per_min(spec.speed_knots);
  const double h0 = spec.heading_deg * kDeg;
  // lon/lat-plane direction of the first step, clockwise from north
  double alpha = std::atan2(std::sin(h0) / std::cos(spec.start.lat * kDeg), std::cos(h0)) / kDeg;

  Track t{spec.mmsi, {}};
  t.records.reserve(spec.length_minutes);
  GeoPoint p = spec.start;
  for (std::size_t i = 0; i < spec.length_minutes; ++i) {
    t.records.push_back(make_record(spec, i, p, ground_heading(alpha, p.lat)));
    const double sa = std::sin(alpha * kDeg);
    const double ca = std::cos(alpha * kDeg);
    const double km_per_unit = kSynthKmPerDegree * std::hypot(sa * std::cos(p.lat * kDeg), ca);
    const double len = step_km / km_per_unit;
    p = GeoPoint{p.lon + len * sa, p.lat + len * ca};
    alpha += spec.turn_rate_deg;
  }
  return t;
}

Track random_walk(const SynthSpec& spec) {
  const double step_km = knots_to_km_per_min(spec.speed_knots);
  UniformSource rng(spec.seed);
  Track t{spec.mmsi, {}};
  t.records.reserve(spec.length_minutes);
  GeoPoint p = spec.start;
  for (std::size_t i = 0; i < spec.length_minutes; ++i) {
    const double heading = 360.0 * rng.unit();
    t.records.push_back(make_record(spec, i, p, heading));
    const double h = heading * kDeg;
    p = GeoPoint{p.lon + step_km * std::sin(h) / (kSynthKmPerDegree * std::cos(p.lat * kDeg)),
                 p.lat + step_km * std::cos(h) / kSynthKmPerDegree};
  }
  return t;
}

}  // namespace

std::string_view to_string(SynthKind k) {
  switch (k) {
    case SynthKind::Linear:
      return "linear";
    case SynthKind::Arc:
      return "arc";
    case SynthKind::RandomWalk:
      return "random_walk";
  }
  return "linear";
}

SynthKind synth_kind_from_string(std::string_view s) {
  if (s == "linear") return SynthKind::Linear;
  if (s == "arc") return SynthKind::Arc;
  if (s == "random_walk" || s == "randomwalk") return SynthKind::RandomWalk;
  throw ConfigError("unknown synth kind '" + std::string(s) + "' (linear|arc|random_walk)");
}

void SynthSpec::validate() const {
  if (length_minutes < 3) throw ValidationError("synthetic track needs at least 3 minutes");
  if (!std::isfinite(speed_knots) || speed_knots < 0.0) throw ValidationError("speed must be finite and >= 0");
  if (!start.valid() || std::abs(start.lat) >= 89.0) throw ValidationError("start position out of range");
  if (!std::isfinite(heading_deg) || !std::isfinite(turn_rate_deg))
    throw ValidationError("heading and turn rate must be finite");
  if (mmsi == 0 || mmsi > 999999999) throw ValidationError("mmsi must have 1 to 9 digits");
}

Track generate(const SynthSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case SynthKind::Linear:
      return linear(spec);
    case SynthKind::Arc:
      return arc(spec);
    case SynthKind::RandomWalk:
      return random_walk(spec);
  }
  return linear(spec);
}

Track inject_sog_spike(Track track, std::size_t at, double magnitude) {
  if (at == 0) throw PreconditionError("cannot spike index 0: no previous record");
  if (at >= track.size()) throw PreconditionError("spike index out of range");
  auto& r = track.records[at];
  if (r.sog + magnitude < 0.0) throw PreconditionError("spike would make SOG negative");
  r.sog += magnitude;
  return track;
}

Track inject_gap(Track track, std::size_t start, std::size_t minutes) {
  if (minutes == 0) throw PreconditionError("gap must be at least 1 minute");
  if (start + minutes >= track.size()) throw PreconditionError("gap would remove the track's last record");
  const auto first = track.records.begin() + static_cast<std::ptrdiff_t>(start);
  if ((first + static_cast<std::ptrdiff_t>(minutes))->t - first->t != static_cast<std::int64_t>(minutes))
    throw PreconditionError("gap injection needs a minute-regular range");
  track.records.erase(first + 1, first + static_cast<std::ptrdiff_t>(minutes));
  return track;
}

Track build_scenario_track(const ScenarioTrack& scenario) {
  Track t = generate(scenario.spec);
  for (const auto& s : scenario.spikes) t = inject_sog_spike(std::move(t), s.at, s.magnitude);
  auto gaps = scenario.gaps;
  std::sort(gaps.begin(), gaps.end(),
            [](const GapInjection& a, const GapInjection& b) { return a.start > b.start; });
  for (const auto& g : gaps) t = inject_gap(std::move(t), g.start, g.minutes);
  return t;
}

}  // namespace aisdb
