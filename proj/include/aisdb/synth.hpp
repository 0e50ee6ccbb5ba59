#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "aisdb/model.hpp"

namespace aisdb {

enum class SynthKind : std::uint8_t { Linear, Arc, RandomWalk };

std::string_view to_string(SynthKind k);
/// Throws ConfigError for unknown names.
SynthKind synth_kind_from_string(std::string_view s);

/// km per degree used to turn ground displacement into lon/lat increments
/// (longitude scaled by cos(latitude)).
inline constexpr double kSynthKmPerDegree = 111.320;

struct SynthSpec {
  SynthKind kind = SynthKind::Linear;
  std::size_t length_minutes = 600;
  double speed_knots = 20.0;
  GeoPoint start{-123.0, 40.0};
  double heading_deg = 0.0;   // ground heading of the first step
  double turn_rate_deg = 1.0;  // Arc only, per minute, positive clockwise
  std::uint64_t seed = 1;
  Mmsi mmsi = 100000001;
  Timestamp start_time = Timestamp::from_civil(2009, 2, 1, 0, 0);

  /// Throws ValidationError.
  void validate() const;
};

/// Minute-regular track following the requested kinematics.
///
/// Linear moves by a fixed lon/lat increment per minute (scaled at the start
/// latitude), so positions are exactly affine in time. Arc rotates the lon/lat
/// step direction by turn_rate each minute and sizes every step so its ground
/// length matches the speed at the local latitude; the turn cosine measured on
/// raw lon/lat is therefore cos(turn_rate) at every interior point.
/// RandomWalk draws a fresh uniform heading every minute.
/// COG is the ground heading of each record's outgoing step; SOG is the speed.
Track generate(const SynthSpec& spec);

/// Adds `magnitude` knots to the SOG at index `at` (at >= 1).
Track inject_sog_spike(Track track, std::size_t at, double magnitude);

/// Removes the records strictly between `start` and `start + minutes` so that
/// the surviving pair is `minutes` apart. `minutes == 1` removes nothing.
Track inject_gap(Track track, std::size_t start, std::size_t minutes);

struct SpikeInjection {
  std::size_t at = 0;
  double magnitude = 0.0;
};

struct GapInjection {
  std::size_t start = 0;
  std::size_t minutes = 0;
};

/// One generated track plus its defects. Gaps are applied from the last
/// start index backwards so earlier indices refer to the pristine track.
struct ScenarioTrack {
  SynthSpec spec;
  std::vector<SpikeInjection> spikes;
  std::vector<GapInjection> gaps;
};

Track build_scenario_track(const ScenarioTrack& scenario);

}  // namespace aisdb
