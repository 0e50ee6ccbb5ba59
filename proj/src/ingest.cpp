#include "aisdb/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string_view>

#include "aisdb/errors.hpp"

namespace aisdb {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kHeader = "XCoord,YCoord,SOG,COG,ROT,BASEDATETIME,MMSI";

enum Column : std::size_t { kX, kY, kSog, kCog, kRot, kTime, kMmsi, kVesselType, kProv, kColumnCount };

constexpr std::array<std::string_view, kColumnCount> kColumnNames{
    "XCOORD", "YCOORD", "SOG", "COG", "ROT", "BASEDATETIME", "MMSI", "VESSELTYPE", "PROVENANCE"};
constexpr std::array<bool, kColumnCount> kMandatory{true, true, true, true, false,
                                                    true, true, false, false};
constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
    s.remove_suffix(1);
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

void split(std::string_view line, std::vector<std::string_view>& fields) {
  fields.clear();
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::optional<double> to_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<Mmsi> to_mmsi(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  Mmsi v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) return std::nullopt;
  return v;
}

bool in_study_region(const GeoPoint& p) {
  return p.lon >= -126.0 && p.lon <= -120.0 && p.lat >= 30.0 && p.lat <= 50.0;
}

struct HeaderMap {
  std::array<std::size_t, kColumnCount> index{};
  std::size_t width = 0;
};

HeaderMap map_header(std::string_view line) {
  std::vector<std::string_view> fields;
  split(line, fields);
  HeaderMap map;
  map.index.fill(kAbsent);
  map.width = fields.size();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string name = upper(fields[i]);
    for (std::size_t c = 0; c < kColumnCount; ++c) {
      if (name == kColumnNames[c] && map.index[c] == kAbsent) map.index[c] = i;
    }
  }
  for (std::size_t c = 0; c < kColumnCount; ++c) {
    if (kMandatory[c] && map.index[c] == kAbsent)
      throw SchemaError("missing mandatory column " + std::string(kColumnNames[c]));
  }
  return map;
}

// Returns the reject reason, or an empty view when the row is accepted.
std::string_view parse_row(const std::vector<std::string_view>& f, const HeaderMap& h,
                           const ParseOptions& options, AisRecord& rec) {
  if (f.size() != h.width) return "wrong field count";
  const auto lon = to_double(f[h.index[kX]]);
  if (!lon) return "bad xcoord";
  const auto lat = to_double(f[h.index[kY]]);
  if (!lat) return "bad ycoord";
  if (*lon < -180.0 || *lon > 180.0) return "lon out of range";
  if (*lat < -90.0 || *lat > 90.0) return "lat out of range";
  const auto sog = to_double(f[h.index[kSog]]);
  if (!sog) return "bad sog";
  if (*sog < 0.0) return "sog out of range";
  const auto cog = to_double(f[h.index[kCog]]);
  if (!cog) return "bad cog";
  if (*cog < 0.0 || *cog > 360.0) return "cog out of range";
  std::optional<double> rot;
  if (h.index[kRot] != kAbsent && !f[h.index[kRot]].empty()) {
    rot = to_double(f[h.index[kRot]]);
    if (!rot) return "bad rot";
  }
  const auto t = Timestamp::try_parse(f[h.index[kTime]]);
  if (!t) return "bad timestamp";
  const auto mmsi = to_mmsi(f[h.index[kMmsi]]);
  if (!mmsi) return "bad mmsi";
  Provenance prov = Provenance::Raw;
  if (options.keep_provenance && h.index[kProv] != kAbsent) {
    const auto p = provenance_from_string(upper(f[h.index[kProv]]));
    if (!p) return "bad provenance";
    prov = *p;
  }

  rec.mmsi = *mmsi;
  rec.pos = GeoPoint{*lon, *lat};
  if (options.clip_region && !in_study_region(rec.pos)) return "outside region";
  rec.sog = *sog;
  rec.cog = *cog;
  rec.rot = rot;
  rec.t = *t;
  rec.provenance = prov;
  rec.vessel_type =
      h.index[kVesselType] != kAbsent ? std::string(f[h.index[kVesselType]]) : std::string{};
  return {};
}

}  // namespace

void IngestReport::merge(const IngestReport& other) {
  rows_read += other.rows_read;
  rows_accepted += other.rows_accepted;
  rows_rejected += other.rows_rejected;
  for (const auto& [reason, n] : other.reject_reasons) reject_reasons[reason] += n;
  duplicates_dropped += other.duplicates_dropped;
  for (const auto& [mmsi, n] : other.records_per_vessel) records_per_vessel[mmsi] += n;
  vessels = records_per_vessel.size();
}

ParseResult parse_csv(std::istream& in, const ParseOptions& options) {
  if (!in) throw IoError("input stream is not readable");
  std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("read failure on input stream");

  std::string_view text = data;
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  ParseResult result;
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    return true;
  };

  std::string_view line;
  bool have_header = false;
  while (next_line(line)) {
    if (!trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header) throw SchemaError("missing header line");
  const HeaderMap header = map_header(line);

  std::vector<std::string_view> fields;
  while (next_line(line)) {
    if (trim(line).empty()) continue;
    ++result.report.rows_read;
    split(line, fields);
    AisRecord rec;
    const auto reason = parse_row(fields, header, options, rec);
    if (!reason.empty()) {
      ++result.report.rows_rejected;
      ++result.report.reject_reasons[std::string(reason)];
      continue;
    }
    ++result.report.rows_accepted;
    result.records.push_back(std::move(rec));
  }
  return result;
}

ParseResult parse_csv_file(const fs::path& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_csv(in, options);
}

std::vector<Track> group_by_vessel(std::vector<AisRecord> records, IngestReport* report) {
  std::stable_sort(records.begin(), records.end(), [](const AisRecord& a, const AisRecord& b) {
    return a.mmsi != b.mmsi ? a.mmsi < b.mmsi : a.t < b.t;
  });

  std::vector<Track> tracks;
  std::size_t duplicates = 0;
  for (auto& rec : records) {
    if (tracks.empty() || tracks.back().mmsi != rec.mmsi) {
      tracks.push_back(Track{rec.mmsi, {}});
    } else if (tracks.back().records.back().t == rec.t) {
      ++duplicates;
      continue;
    }
    tracks.back().records.push_back(std::move(rec));
  }

  if (report != nullptr) {
    report->duplicates_dropped += duplicates;
    for (const auto& tr : tracks) report->records_per_vessel[tr.mmsi] += tr.size();
    report->vessels = report->records_per_vessel.size();
  }
  return tracks;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_track_csv(const Track& track, std::ostream& out, const WriteOptions& options) {
  out << kHeader;
  if (options.annotated) out << ",PROVENANCE";
  out << '\n';
  for (const auto& r : track.records) {
    out << format_double(r.pos.lon) << ',' << format_double(r.pos.lat) << ','
        << format_double(r.sog) << ',' << format_double(r.cog) << ',';
    if (r.rot) out << format_double(*r.rot);
    out << ',' << r.t.format() << ',' << r.mmsi;
    if (options.annotated) out << ',' << to_string(r.provenance);
    out << '\n';
  }
}

fs::path write_track_csv(const Track& track, const fs::path& directory, const WriteOptions& options) {
  if (track.empty()) throw PreconditionError("cannot write an empty track");
  const fs::path path = directory / (std::to_string(track.mmsi) + ".csv");
  std::ostringstream buf;
  write_track_csv(track, buf, options);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << buf.str();
  if (!out) throw IoError("write failed for " + path.string());
  return path;
}

DatabaseLoad read_database(const fs::path& directory) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) throw IoError("not a directory: " + directory.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  const auto n = static_cast<std::ptrdiff_t>(files.size());
  std::vector<std::optional<Track>> loaded(files.size());
  std::vector<std::string> messages(files.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& path = files[static_cast<std::size_t>(i)];
    try {
      const auto expected = to_mmsi(path.stem().string());
      if (!expected) throw ValidationError("file name is not an MMSI");
      ParseOptions opts;
      opts.keep_provenance = true;
      auto parsed = parse_csv_file(path, opts);
      if (parsed.report.rows_rejected > 0)
        throw ValidationError(std::to_string(parsed.report.rows_rejected) + " malformed rows");
      Track track{*expected, std::move(parsed.records)};
      for (std::size_t k = 0; k < track.size(); ++k) {
        if (track.records[k].mmsi != *expected)
          throw ValidationError("MMSI mismatch: file name says " + std::to_string(*expected) +
                                " but row " + std::to_string(k + 1) + " has " +
                                std::to_string(track.records[k].mmsi));
        if (k > 0 && !(track.records[k - 1].t < track.records[k].t))
          throw ValidationError("timestamps not strictly increasing at row " + std::to_string(k + 1));
      }
      if (track.empty()) throw ValidationError("file has no records");
      loaded[static_cast<std::size_t>(i)] = std::move(track);
    } catch (const std::exception& e) {
      messages[static_cast<std::size_t>(i)] = e.what();
    }
  }

  DatabaseLoad out;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (loaded[i]) {
      out.tracks.push_back(std::move(*loaded[i]));
    } else {
      out.errors.push_back(FileError{files[i], messages[i]});
    }
  }
  std::sort(out.tracks.begin(), out.tracks.end(),
            [](const Track& a, const Track& b) { return a.mmsi < b.mmsi; });
  return out;
}

}  // namespace aisdb
