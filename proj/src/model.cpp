#include "aisdb/model.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "aisdb/errors.hpp"

namespace aisdb {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::optional<unsigned> digits_value(std::string_view s) {
  unsigned v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

}  // namespace

bool GeoPoint::valid() const {
  return std::isfinite(lon) && std::isfinite(lat) && lon >= -180.0 && lon <= 180.0 &&
         lat >= -90.0 && lat <= 90.0;
}

std::optional<Timestamp> Timestamp::try_parse(std::string_view digits) {
  if (digits.size() != 12) return std::nullopt;
  auto y = digits_value(digits.substr(0, 4));
  auto mo = digits_value(digits.substr(4, 2));
  auto d = digits_value(digits.substr(6, 2));
  auto h = digits_value(digits.substr(8, 2));
  auto mi = digits_value(digits.substr(10, 2));
  if (!y || !mo || !d || !h || !mi) return std::nullopt;
  if (*h > 23 || *mi > 59) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{static_cast<int>(*y)},
                                        std::chrono::month{*mo}, std::chrono::day{*d}};
  if (!ymd.ok()) return std::nullopt;
  return from_civil(static_cast<int>(*y), *mo, *d, *h, *mi);
}

Timestamp Timestamp::parse(std::string_view digits) {
  if (auto t = try_parse(digits)) return *t;
  throw ValidationError("invalid timestamp '" + std::string(digits) + "', expected YYYYMMDDHHMM");
}

Timestamp Timestamp::from_civil(int year, unsigned month, unsigned day, unsigned hour,
                                unsigned minute) {
  using namespace std::chrono;
  const sys_days days{year_month_day{std::chrono::year{year}, std::chrono::month{month},
                                     std::chrono::day{day}}};
  return Timestamp{static_cast<std::int64_t>(days.time_since_epoch().count()) * 1440 +
                   static_cast<std::int64_t>(hour) * 60 + minute};
}

std::string Timestamp::format() const {
  using namespace std::chrono;
  std::int64_t day_count = minutes_ / 1440;
  std::int64_t rem = minutes_ % 1440;
  if (rem < 0) {
    rem += 1440;
    --day_count;
  }
  const year_month_day ymd{sys_days{days{day_count}}};
  std::array<char, 16> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d%02u%02u%02d%02d", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(rem / 60), static_cast<int>(rem % 60));
  return std::string(buf.data());
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Raw:
      return "RAW";
    case Provenance::SpeedCorrected:
      return "CORRECTED";
    case Provenance::Interpolated:
      return "INTERP";
  }
  return "RAW";
}

std::optional<Provenance> provenance_from_string(std::string_view s) {
  if (s == "RAW") return Provenance::Raw;
  if (s == "CORRECTED") return Provenance::SpeedCorrected;
  if (s == "INTERP") return Provenance::Interpolated;
  return std::nullopt;
}

double haversine_km(const GeoPoint& a, const GeoPoint& b, const UnitConstants& units) {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double s_lat = std::sin((phi2 - phi1) / 2.0);
  const double s_lon = std::sin((b.lon - a.lon) * kDegToRad / 2.0);
  const double h = s_lat * s_lat + std::cos(phi1) * std::cos(phi2) * s_lon * s_lon;
  return 2.0 * units.earth_radius_km * std::asin(std::sqrt(std::min(1.0, h)));
}

std::optional<double> displacement_cos(const GeoPoint& p_prev, const GeoPoint& p_cur,
                                       const GeoPoint& p_next) {
  const double ux = p_cur.lon - p_prev.lon;
  const double uy = p_cur.lat - p_prev.lat;
  const double vx = p_next.lon - p_cur.lon;
  const double vy = p_next.lat - p_cur.lat;
  const double nu = std::hypot(ux, uy);
  const double nv = std::hypot(vx, vy);
  if (nu == 0.0 || nv == 0.0) return std::nullopt;
  return std::clamp((ux * vx + uy * vy) / (nu * nv), -1.0, 1.0);
}

double knots_to_km_per_min(double sog_knots, const UnitConstants& units) {
  return sog_knots * units.km_per_nautical_mile / 60.0;
}

}  // namespace aisdb
