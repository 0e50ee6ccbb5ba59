#include "aisdb/clean.hpp"

#include <cmath>
#include <numbers>

#include "aisdb/errors.hpp"

namespace aisdb {

namespace {

void require_increasing(const Track& track) {
  for (std::size_t i = 1; i < track.size(); ++i) {
    if (!(track.records[i - 1].t < track.records[i].t))
      throw PreconditionError("track " + std::to_string(track.mmsi) +
                              " timestamps not strictly increasing at index " + std::to_string(i));
  }
}

}  // namespace

void CleanConfig::validate() const {
  if (!(sog_jump_threshold > 0.0)) throw ConfigError("clean.sog_jump_threshold must be positive");
  if (!(distance_tolerance_km > 0.0)) throw ConfigError("clean.distance_tolerance_km must be positive");
  if (missing_interval_min < 1) throw ConfigError("clean.missing_interval_min must be >= 1");
  if (!(interp_ratio_threshold > 0.0))
    throw ConfigError("clean.interp_ratio_threshold must be positive");
}

double initial_bearing_deg(const GeoPoint& a, const GeoPoint& b) {
  constexpr double k = std::numbers::pi / 180.0;
  const double phi1 = a.lat * k;
  const double phi2 = b.lat * k;
  const double dlon = (b.lon - a.lon) * k;
  const double y = std::sin(dlon) * std::cos(phi2);
  const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlon);
  double deg = std::atan2(y, x) / k;
  if (deg < 0.0) deg += 360.0;
  if (deg >= 360.0) deg -= 360.0;
  return deg;
}

bool detect_sog_error(const AisRecord& prev, const AisRecord& cur, const CleanConfig& cfg) {
  if (!(prev.t < cur.t)) throw PreconditionError("detect_sog_error needs cur.t > prev.t");
  if (std::abs(cur.sog - prev.sog) <= cfg.sog_jump_threshold) return false;
  const auto minutes = static_cast<double>(cur.t - prev.t);
  const double implied_km = knots_to_km_per_min(cur.sog, cfg.units) * minutes;
  const double actual_km = haversine_km(prev.pos, cur.pos, cfg.units);
  return std::abs(implied_km - actual_km) > cfg.distance_tolerance_km;
}

CleanResult correct_sog_errors(const Track& track, const CleanConfig& cfg) {
  require_increasing(track);
  CleanResult out{track, CleanReport{}};
  out.report.mmsi = track.mmsi;
  auto& r = out.track.records;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (detect_sog_error(r[i - 1], r[i], cfg)) {
      r[i].sog = r[i - 1].sog;
      r[i].provenance = Provenance::SpeedCorrected;
      out.report.sog_corrections.push_back(i);
    }
  }
  return out;
}

std::vector<MissingPair> find_missing_pairs(const Track& track, const CleanConfig& cfg) {
  require_increasing(track);
  std::vector<MissingPair> pairs;
  const auto& r = track.records;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const std::int64_t gap = r[i].t - r[i - 1].t;
    if (gap > cfg.missing_interval_min) pairs.push_back(MissingPair{r[i - 1], r[i], gap, i - 1});
  }
  return pairs;
}

bool needs_interpolation(const MissingPair& pair, const CleanConfig& cfg) {
  const double speed = knots_to_km_per_min(pair.earlier.sog, cfg.units);
  if (!(speed > 0.0)) return false;
  return haversine_km(pair.earlier.pos, pair.later.pos, cfg.units) / speed > cfg.interp_ratio_threshold;
}

std::vector<AisRecord> interpolate_gap(const MissingPair& pair, const CleanConfig& cfg) {
  if (pair.gap_minutes < 2) throw PreconditionError("interpolate_gap needs a gap of at least 2 minutes");
  const auto& a = pair.earlier;
  const auto& b = pair.later;
  const double cog =
      cfg.cog_mode == InterpolatedCog::ChordBearing ? initial_bearing_deg(a.pos, b.pos) : a.cog;
  const auto n = static_cast<double>(pair.gap_minutes);

  std::vector<AisRecord> out;
  out.reserve(static_cast<std::size_t>(pair.gap_minutes - 1));
  for (std::int64_t k = 1; k < pair.gap_minutes; ++k) {
    const double f = static_cast<double>(k) / n;
    AisRecord rec = a;
    rec.pos.lon = a.pos.lon + f * (b.pos.lon - a.pos.lon);
    rec.pos.lat = a.pos.lat + f * (b.pos.lat - a.pos.lat);
    rec.cog = cog;
    rec.t = a.t + k;
    rec.provenance = Provenance::Interpolated;
    out.push_back(std::move(rec));
  }
  return out;
}

CleanResult clean_track(const Track& track, const CleanConfig& cfg) {
  CleanResult corrected = correct_sog_errors(track, cfg);
  const auto pairs = find_missing_pairs(corrected.track, cfg);

  CleanResult out{Track{track.mmsi, {}}, std::move(corrected.report)};
  out.report.pairs_found = pairs.size();
  const auto& src = corrected.track.records;
  out.track.records.reserve(src.size());

  std::size_t next_pair = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    out.track.records.push_back(src[i]);
    if (next_pair < pairs.size() && pairs[next_pair].earlier_index == i) {
      const auto& pair = pairs[next_pair++];
      if (needs_interpolation(pair, cfg)) {
        auto fill = interpolate_gap(pair, cfg);
        out.report.pairs_interpolated += 1;
        out.report.records_inserted += fill.size();
        out.track.records.insert(out.track.records.end(), std::make_move_iterator(fill.begin()),
                                 std::make_move_iterator(fill.end()));
      }
    }
  }
  return out;
}

}  // namespace aisdb
