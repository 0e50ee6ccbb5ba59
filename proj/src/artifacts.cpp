#include "aisdb/artifacts.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "aisdb/errors.hpp"

namespace aisdb {

namespace fs = std::filesystem;

json to_json(const IngestReport& r) {
  json reasons = json::object();
  for (const auto& [k, v] : r.reject_reasons) reasons[k] = v;
  json per_vessel = json::object();
  for (const auto& [k, v] : r.records_per_vessel) per_vessel[std::to_string(k)] = v;
  return json{{"rows_read", r.rows_read},
              {"rows_accepted", r.rows_accepted},
              {"rows_rejected", r.rows_rejected},
              {"reject_reasons", reasons},
              {"duplicates_dropped", r.duplicates_dropped},
              {"vessels", r.vessels},
              {"records_per_vessel", per_vessel}};
}

json to_json(const ScreenReport& r) {
  return json{{"mmsi", r.mmsi},
              {"records", r.records},
              {"longest_nav_run", r.longest_nav_run},
              {"complexity", r.complexity ? json(*r.complexity) : json(nullptr)},
              {"noise_class", r.noise_class ? json(std::string(to_string(*r.noise_class))) : json(nullptr)},
              {"accepted", r.accepted}};
}

json to_json(const CleanReport& r) {
  return json{{"mmsi", r.mmsi},
              {"sog_corrections", r.sog_corrections.size()},
              {"sog_correction_indices", r.sog_corrections},
              {"pairs_found", r.pairs_found},
              {"pairs_interpolated", r.pairs_interpolated},
              {"records_inserted", r.records_inserted}};
}

json to_json(std::span<const ScreenReport> reports) {
  json arr = json::array();
  std::size_t accepted = 0;
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    accepted += r.accepted ? 1 : 0;
  }
  return json{{"tracks", reports.size()}, {"accepted", accepted}, {"reports", arr}};
}

json to_json(std::span<const CleanReport> reports) {
  json arr = json::array();
  std::size_t corrections = 0, pairs = 0, interpolated = 0, inserted = 0;
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    corrections += r.sog_corrections.size();
    pairs += r.pairs_found;
    interpolated += r.pairs_interpolated;
    inserted += r.records_inserted;
  }
  return json{{"tracks", reports.size()},
              {"sog_corrections", corrections},
              {"pairs_found", pairs},
              {"pairs_interpolated", interpolated},
              {"records_inserted", inserted},
              {"reports", arr}};
}

namespace {

template <typename Enum, std::size_t N>
json named_histogram(const std::array<std::size_t, N>& counts) {
  json j = json::object();
  for (std::size_t i = 0; i < N; ++i) j[std::string(to_string(static_cast<Enum>(i)))] = counts[i];
  return j;
}

template <typename Enum, std::size_t N>
std::string named_csv(const std::array<std::size_t, N>& counts) {
  std::ostringstream out;
  out << "bin,count\n";
  for (std::size_t i = 0; i < N; ++i) out << to_string(static_cast<Enum>(i)) << ',' << counts[i] << '\n';
  return out.str();
}

}  // namespace

json to_json(const DatabaseSummary& s) {
  json vessel = json::object();
  for (const auto& [k, v] : s.vessel_type_histogram) vessel[k] = v;
  json interp = json::array();
  for (const auto& [bin, n] : s.interpolated_length_histogram) interp.push_back({{"bin_start", bin}, {"count", n}});
  return json{{"total_records", s.total_records},
              {"total_trajectories", s.total_trajectories},
              {"cog_histogram", named_histogram<CogStatus>(s.cog_histogram)},
              {"sog_histogram", named_histogram<SogStatus>(s.sog_histogram)},
              {"route_type_original", named_histogram<RouteType>(s.route_type_original)},
              {"route_type_interpolated", named_histogram<RouteType>(s.route_type_interpolated)},
              {"vessel_type_histogram", vessel},
              {"interp_bin_width", s.interp_bin_width},
              {"interpolated_length_histogram", interp}};
}

json to_json(const ErrorHistogram& h) {
  json bins = json::array();
  for (std::size_t k = 0; k < h.counts.size(); ++k)
    bins.push_back({{"bin_start_nm", static_cast<double>(k) * h.bin_width}, {"count", h.counts[k]}});
  return json{{"bin_width_nm", h.bin_width}, {"total", h.total()}, {"bins", bins}};
}

json eval_config_to_json(const EvalConfig& c) {
  return json{{"horizon", c.horizon},
              {"feature_len", c.feature_len},
              {"samples", c.samples},
              {"hidden", c.hidden},
              {"seed", c.seed},
              {"ridge", c.ridge},
              {"stride", c.stride},
              {"bin_width", c.bin_width_nm},
              {"retrain_each_step", c.retrain_each_step},
              {"features", c.features == FeatureMode::Position ? "position" : "position_sog_cog"},
              {"earth_radius_km", c.units.earth_radius_km},
              {"km_per_nautical_mile", c.units.km_per_nautical_mile}};
}

json config_to_json(const PipelineConfig& c) {
  return json{
      {"input", c.input.generic_string()},
      {"clip_region", c.clip_region},
      {"annotated", c.annotated},
      {"seed", c.seed},
      {"units", {{"earth_radius_km", c.units.earth_radius_km}, {"km_per_nautical_mile", c.units.km_per_nautical_mile}}},
      {"screen",
       {{"min_run", c.screen.min_run},
        {"complexity_threshold", c.screen.complexity_threshold},
        {"gap_km_threshold", c.screen.gap_km_threshold},
        {"loose_mean_spacing_km", c.screen.loose_mean_spacing_km}}},
      {"clean",
       {{"sog_jump_threshold", c.clean.sog_jump_threshold},
        {"distance_tolerance_km", c.clean.distance_tolerance_km},
        {"missing_interval_min", c.clean.missing_interval_min},
        {"interp_ratio_threshold", c.clean.interp_ratio_threshold},
        {"interpolated_cog", c.clean.cog_mode == InterpolatedCog::CopyEarlier ? "copy_earlier" : "chord_bearing"}}},
      {"stats", {{"interp_bin_width", c.interp_bin_width}}},
      {"predict",
       {{"enabled", c.predict},
        {"horizon", c.eval.horizon},
        {"feature_len", c.eval.feature_len},
        {"samples", c.eval.samples},
        {"hidden", c.eval.hidden},
        {"ridge", c.eval.ridge},
        {"stride", c.eval.stride},
        {"bin_width", c.eval.bin_width_nm},
        {"retrain_each_step", c.eval.retrain_each_step},
        {"features", c.eval.features == FeatureMode::Position ? "position" : "position_sog_cog"}}}};
}

namespace {

// Reads known keys from an object, rejecting anything unexpected.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + " must be a JSON object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) throw ConfigError("");
      } else if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer() || (std::is_unsigned_v<T> && it->template get<long long>() < 0))
          throw ConfigError("");
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!it->is_number()) throw ConfigError("");
      } else {
        if (!it->is_string()) throw ConfigError("");
      }
      out = it->template get<T>();
    } catch (const std::exception&) {
      throw ConfigError(where_ + "." + key + " has the wrong type");
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.contains(k)) throw ConfigError("unknown config key " + where_ + "." + k);
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

FeatureMode feature_mode_from(const std::string& s) {
  if (s == "position") return FeatureMode::Position;
  if (s == "position_sog_cog") return FeatureMode::PositionSogCog;
  throw ConfigError("predict.features must be position or position_sog_cog");
}

InterpolatedCog cog_mode_from(const std::string& s) {
  if (s == "copy_earlier") return InterpolatedCog::CopyEarlier;
  if (s == "chord_bearing") return InterpolatedCog::ChordBearing;
  throw ConfigError("clean.interpolated_cog must be copy_earlier or chord_bearing");
}

}  // namespace

PipelineConfig config_from_json(const json& j, PipelineConfig c) {
  ObjectReader root(j, "config");
  std::string input = c.input.string();
  std::string output = c.output.string();
  root.get("input", input);
  root.get("output", output);
  c.input = input;
  c.output = output;
  root.get("clip_region", c.clip_region);
  root.get("annotated", c.annotated);
  root.get("seed", c.seed);
  root.get("jobs", c.jobs);
  if (const auto* u = root.child("units")) {
    ObjectReader r(*u, "units");
    r.get("earth_radius_km", c.units.earth_radius_km);
    r.get("km_per_nautical_mile", c.units.km_per_nautical_mile);
    r.finish();
  }
  if (const auto* s = root.child("screen")) {
    ObjectReader r(*s, "screen");
    r.get("min_run", c.screen.min_run);
    r.get("complexity_threshold", c.screen.complexity_threshold);
    r.get("gap_km_threshold", c.screen.gap_km_threshold);
    r.get("loose_mean_spacing_km", c.screen.loose_mean_spacing_km);
    r.finish();
  }
  if (const auto* s = root.child("clean")) {
    ObjectReader r(*s, "clean");
    r.get("sog_jump_threshold", c.clean.sog_jump_threshold);
    r.get("distance_tolerance_km", c.clean.distance_tolerance_km);
    r.get("missing_interval_min", c.clean.missing_interval_min);
    r.get("interp_ratio_threshold", c.clean.interp_ratio_threshold);
    std::string mode = c.clean.cog_mode == InterpolatedCog::CopyEarlier ? "copy_earlier" : "chord_bearing";
    r.get("interpolated_cog", mode);
    c.clean.cog_mode = cog_mode_from(mode);
    r.finish();
  }
  if (const auto* s = root.child("stats")) {
    ObjectReader r(*s, "stats");
    r.get("interp_bin_width", c.interp_bin_width);
    r.finish();
  }
  if (const auto* s = root.child("predict")) {
    ObjectReader r(*s, "predict");
    r.get("enabled", c.predict);
    r.get("horizon", c.eval.horizon);
    r.get("feature_len", c.eval.feature_len);
    r.get("samples", c.eval.samples);
    r.get("hidden", c.eval.hidden);
    r.get("ridge", c.eval.ridge);
    r.get("stride", c.eval.stride);
    r.get("bin_width", c.eval.bin_width_nm);
    r.get("retrain_each_step", c.eval.retrain_each_step);
    std::string mode = c.eval.features == FeatureMode::Position ? "position" : "position_sog_cog";
    r.get("features", mode);
    c.eval.features = feature_mode_from(mode);
    r.finish();
  }
  root.finish();
  return c;
}

PipelineConfig load_config_file(const fs::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, std::move(base));
}

json synth_spec_to_json(const SynthSpec& s) {
  return json{{"kind", std::string(to_string(s.kind))},
              {"length", s.length_minutes},
              {"speed", s.speed_knots},
              {"lon", s.start.lon},
              {"lat", s.start.lat},
              {"heading", s.heading_deg},
              {"turn_rate", s.turn_rate_deg},
              {"seed", s.seed},
              {"mmsi", s.mmsi},
              {"start_time", s.start_time.format()}};
}

std::vector<ScenarioTrack> scenario_from_json(const json& j) {
  ObjectReader root(j, "scenario");
  const json* tracks = root.child("tracks");
  root.finish();
  if (tracks == nullptr || !tracks->is_array()) throw ConfigError("scenario.tracks must be an array");

  std::vector<ScenarioTrack> out;
  for (std::size_t i = 0; i < tracks->size(); ++i) {
    const std::string where = "scenario.tracks[" + std::to_string(i) + "]";
    ObjectReader r((*tracks)[i], where);
    ScenarioTrack st;
    auto& s = st.spec;
    std::string kind(to_string(s.kind));
    r.get("kind", kind);
    s.kind = synth_kind_from_string(kind);
    r.get("length", s.length_minutes);
    r.get("speed", s.speed_knots);
    r.get("lon", s.start.lon);
    r.get("lat", s.start.lat);
    r.get("heading", s.heading_deg);
    r.get("turn_rate", s.turn_rate_deg);
    r.get("seed", s.seed);
    r.get("mmsi", s.mmsi);
    std::string start = s.start_time.format();
    r.get("start_time", start);
    const auto t = Timestamp::try_parse(start);
    if (!t) throw ConfigError(where + ".start_time must be YYYYMMDDHHMM");
    s.start_time = *t;
    if (const json* spikes = r.child("spikes")) {
      if (!spikes->is_array()) throw ConfigError(where + ".spikes must be an array");
      for (const auto& sp : *spikes) {
        ObjectReader sr(sp, where + ".spikes[]");
        SpikeInjection inj;
        sr.get("at", inj.at);
        sr.get("magnitude", inj.magnitude);
        sr.finish();
        st.spikes.push_back(inj);
      }
    }
    if (const json* gaps = r.child("gaps")) {
      if (!gaps->is_array()) throw ConfigError(where + ".gaps must be an array");
      for (const auto& g : *gaps) {
        ObjectReader gr(g, where + ".gaps[]");
        GapInjection inj;
        gr.get("start", inj.start);
        gr.get("minutes", inj.minutes);
        gr.finish();
        st.gaps.push_back(inj);
      }
    }
    r.finish();
    out.push_back(std::move(st));
  }
  return out;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json_file(const fs::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

void write_summary(const fs::path& dir, const DatabaseSummary& s) {
  ensure_directory(dir);
  write_json_file(dir / "summary.json", to_json(s));
  write_text_file(dir / "fig14_cog.csv", named_csv<CogStatus>(s.cog_histogram));
  write_text_file(dir / "fig15_sog.csv", named_csv<SogStatus>(s.sog_histogram));
  write_text_file(dir / "fig16_len.csv", named_csv<RouteType>(s.route_type_original));
  write_text_file(dir / "fig17_len_interp.csv", named_csv<RouteType>(s.route_type_interpolated));
  std::ostringstream interp;
  interp << "bin_start,count\n";
  for (const auto& [bin, n] : s.interpolated_length_histogram) interp << bin << ',' << n << '\n';
  write_text_file(dir / "fig18_interp_hist.csv", interp.str());
  if (!s.vessel_type_histogram.empty()) {
    std::ostringstream vt;
    vt << "vessel_type,count\n";
    for (const auto& [k, n] : s.vessel_type_histogram) vt << k << ',' << n << '\n';
    write_text_file(dir / "fig13_vessel_type.csv", vt.str());
  }
}

void write_eval_outputs(const fs::path& dir, const Track& track, const EvalResult& result) {
  ensure_directory(dir);
  std::ostringstream errors;
  errors << "t_c,error_nm\n";
  for (const auto& p : result.predictions) errors << p.current << ',' << format_double(p.error_nm) << '\n';
  write_text_file(dir / "errors.csv", errors.str());

  std::ostringstream hist;
  hist << "bin_start_nm,bin_end_nm,count\n";
  const auto& h = result.histogram;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    hist << format_double(static_cast<double>(k) * h.bin_width) << ','
         << format_double(static_cast<double>(k + 1) * h.bin_width) << ',' << h.counts[k] << '\n';
  }
  write_text_file(dir / "histogram.csv", hist.str());

  std::ostringstream pred;
  pred << "MMSI,t_c,BASEDATETIME,real_x,real_y,pred_x,pred_y,error_nm\n";
  for (const auto& p : result.predictions) {
    pred << track.mmsi << ',' << p.current << ',' << p.target_time.format() << ',' << format_double(p.actual.lon)
         << ',' << format_double(p.actual.lat) << ',' << format_double(p.predicted.lon) << ','
         << format_double(p.predicted.lat) << ',' << format_double(p.error_nm) << '\n';
  }
  write_text_file(dir / "predicted_track.csv", pred.str());
}

}  // namespace aisdb
