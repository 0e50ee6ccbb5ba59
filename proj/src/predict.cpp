#include "aisdb/predict.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aisdb/errors.hpp"

namespace aisdb {

std::size_t values_per_minute(FeatureMode mode) { return mode == FeatureMode::Position ? 2 : 4; }

void SegmentationConfig::validate() const {
  if (feature_len == 0) throw SizingError("feature length must be at least 1");
  if (samples == 0) throw SizingError("need at least one training sample");
  const std::size_t needed = horizon + feature_len + samples - 1;
  if (current < needed)
    throw SizingError("window underflow: current index " + std::to_string(current) + " needs " +
                      std::to_string(needed) + " minutes of history, short by " +
                      std::to_string(needed - current));
}

std::size_t SegmentationPlan::max_index() const {
  std::size_t m = test_last;
  for (const auto& w : training) m = std::max({m, w.last, w.target});
  return m;
}

std::size_t SegmentationPlan::min_index() const {
  std::size_t m = test_first;
  for (const auto& w : training) m = std::min(m, w.first);
  return m;
}

SegmentationPlan plan_segments(const SegmentationConfig& cfg) {
  cfg.validate();
  SegmentationPlan plan;
  plan.training.reserve(cfg.samples);
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    TrainingWindow w;
    w.last = cfg.current - cfg.horizon - k;
    w.first = w.last + 1 - cfg.feature_len;
    w.target = cfg.current - k;
    plan.training.push_back(w);
  }
  plan.test_last = cfg.current;
  plan.test_first = cfg.current + 1 - cfg.feature_len;
  return plan;
}

std::vector<double> window_features(const Track& track, std::size_t first, std::size_t last,
                                    FeatureMode mode) {
  std::vector<double> f;
  f.reserve((last - first + 1) * values_per_minute(mode));
  for (std::size_t i = first; i <= last; ++i) {
    const auto& r = track.records[i];
    f.push_back(r.pos.lon);
    f.push_back(r.pos.lat);
    if (mode == FeatureMode::PositionSogCog) {
      f.push_back(r.sog);
      f.push_back(r.cog);
    }
  }
  return f;
}

namespace {

bool minute_regular(const Track& track, std::size_t lo, std::size_t hi) {
  return track.records[hi].t - track.records[lo].t == static_cast<std::int64_t>(hi - lo);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

Segmentation segment(const Track& track, const SegmentationConfig& cfg) {
  const SegmentationPlan plan = plan_segments(cfg);
  if (cfg.current >= track.size())
    throw SizingError("current index " + std::to_string(cfg.current) + " is past the track end (" +
                      std::to_string(track.size()) + " records)");
  if (plan.max_index() > cfg.current) throw PreconditionError("segmentation referenced a future minute");
  if (!minute_regular(track, plan.min_index(), cfg.current))
    throw ValidationError("track is not minute-regular over the segmentation range");

  Segmentation seg;
  seg.training.reserve(plan.training.size());
  for (const auto& w : plan.training) {
    seg.training.push_back(
        Sample{window_features(track, w.first, w.last, cfg.features), track.records[w.target].pos});
  }
  seg.test_features = window_features(track, plan.test_first, plan.test_last, cfg.features);
  return seg;
}

void ElmParams::validate() const {
  if (hidden == 0) throw ConfigError("ELM needs at least one hidden node");
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw ConfigError("ridge must be finite and >= 0");
}

Eigen::VectorXd normalize_features(const ElmModel& model, std::span<const double> features) {
  const auto d = static_cast<Eigen::Index>(features.size());
  Eigen::VectorXd x(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lo = model.feature_min[i];
    const double span = model.feature_max[i] - lo;
    x[i] = span > 0.0 ? 2.0 * (features[static_cast<std::size_t>(i)] - lo) / span - 1.0 : 0.0;
  }
  return x;
}

Eigen::MatrixXd hidden_layer(const ElmModel& model, const Eigen::MatrixXd& normalized) {
  Eigen::MatrixXd h = normalized * model.input_weights.transpose();
  h.rowwise() += model.biases.transpose();
  return h.unaryExpr(&sigmoid);
}

ElmModel train_elm(std::span<const Sample> samples, const ElmParams& params) {
  params.validate();
  if (samples.empty()) throw SizingError("ELM training needs at least one sample");
  const std::size_t dim = samples.front().features.size();
  if (dim == 0) throw SizingError("ELM samples have empty feature vectors");
  for (const auto& s : samples) {
    if (s.features.size() != dim) throw SizingError("inconsistent feature lengths in training set");
  }

  const auto n = static_cast<Eigen::Index>(samples.size());
  const auto d = static_cast<Eigen::Index>(dim);
  const auto hidden = static_cast<Eigen::Index>(params.hidden);

  ElmModel model;
  model.seed = params.seed;
  model.ridge = params.ridge;

  Eigen::MatrixXd raw(n, d);
  Eigen::MatrixXd targets(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    raw.row(i) = Eigen::Map<const Eigen::RowVectorXd>(s.features.data(), d);
    targets(i, 0) = s.target.lon;
    targets(i, 1) = s.target.lat;
  }
  model.feature_min = raw.colwise().minCoeff().transpose();
  model.feature_max = raw.colwise().maxCoeff().transpose();

  UniformSource rng(params.seed);
  model.input_weights.resize(hidden, d);
  for (Eigen::Index j = 0; j < hidden; ++j)
    for (Eigen::Index i = 0; i < d; ++i) model.input_weights(j, i) = rng.next();
  model.biases.resize(hidden);
  for (Eigen::Index j = 0; j < hidden; ++j) model.biases[j] = rng.next();

  Eigen::MatrixXd normalized(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    normalized.row(i) = normalize_features(model, samples[static_cast<std::size_t>(i)].features).transpose();
  }
  const Eigen::MatrixXd h = hidden_layer(model, normalized);

  if (params.ridge > 0.0) {
    // Ridge as an augmented least-squares problem [H; sqrt(lambda) I] beta = [T; 0].
    // Same minimiser as the normal equations, without squaring the condition number.
    Eigen::MatrixXd aug(n + hidden, hidden);
    aug.topRows(n) = h;
    aug.bottomRows(hidden) = std::sqrt(params.ridge) * Eigen::MatrixXd::Identity(hidden, hidden);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + hidden, 2);
    rhs.topRows(n) = targets;
    model.output_weights = aug.householderQr().solve(rhs);
    if (model.output_weights.allFinite()) return model;
  }
  model.output_weights = h.completeOrthogonalDecomposition().solve(targets);
  return model;
}

GeoPoint predict_position(const ElmModel& model, std::span<const double> features) {
  if (features.size() != model.input_dim())
    throw SizingError("feature length " + std::to_string(features.size()) + " does not match model input " +
                      std::to_string(model.input_dim()));
  const Eigen::MatrixXd x = normalize_features(model, features).transpose();
  const Eigen::RowVectorXd out = hidden_layer(model, x) * model.output_weights;
  return GeoPoint{out[0], out[1]};
}

void EvalConfig::validate() const {
  if (horizon == 0) throw ConfigError("prediction horizon must be at least 1 minute");
  if (feature_len == 0) throw ConfigError("feature length must be at least 1");
  if (samples == 0) throw ConfigError("need at least one training sample");
  if (stride == 0) throw ConfigError("stride must be at least 1");
  if (!(bin_width_nm > 0.0)) throw ConfigError("histogram bin width must be positive");
  ElmParams{hidden, seed, ridge}.validate();
}

std::size_t ErrorHistogram::total() const {
  std::size_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

ErrorHistogram error_histogram(std::span<const Prediction> predictions, double bin_width) {
  ErrorHistogram h;
  h.bin_width = bin_width;
  for (const auto& p : predictions) {
    const auto bin = static_cast<std::size_t>(std::floor(p.error_nm / bin_width));
    if (bin >= h.counts.size()) h.counts.resize(bin + 1, 0);
    ++h.counts[bin];
  }
  return h;
}

std::vector<std::size_t> evaluation_points(const Track& track, const EvalConfig& cfg) {
  cfg.validate();
  const std::size_t first = cfg.first_current();
  if (track.size() < first + cfg.horizon + 1)
    throw SizingError("track of " + std::to_string(track.size()) + " records is too short; need at least " +
                      std::to_string(first + cfg.horizon + 1));
  std::vector<std::size_t> points;
  for (std::size_t tc = first; tc + cfg.horizon < track.size(); tc += cfg.stride) points.push_back(tc);
  return points;
}

namespace {

SegmentationConfig segmentation_for(const EvalConfig& cfg, std::size_t current) {
  return SegmentationConfig{cfg.feature_len, cfg.horizon, cfg.samples, current, cfg.features};
}

}  // namespace

ElmModel train_at(const Track& track, const EvalConfig& cfg, std::size_t current) {
  const auto seg = segment(track, segmentation_for(cfg, current));
  return train_elm(seg.training, ElmParams{cfg.hidden, derive_seed(cfg.seed, current), cfg.ridge});
}

bool evaluation_ready(const Track& track, const EvalConfig& cfg, std::size_t current) {
  const std::size_t target = current + cfg.horizon;
  if (current < cfg.first_current() || target >= track.size()) return false;
  return minute_regular(track, current - cfg.first_current() + 1, target);
}

std::optional<Prediction> evaluate_at(const Track& track, const EvalConfig& cfg, std::size_t current,
                                      const ElmModel* model) {
  if (!evaluation_ready(track, cfg, current)) return std::nullopt;
  const std::size_t target = current + cfg.horizon;

  const auto seg = segment(track, segmentation_for(cfg, current));
  GeoPoint predicted;
  if (model != nullptr) {
    predicted = predict_position(*model, seg.test_features);
  } else {
    const auto trained =
        train_elm(seg.training, ElmParams{cfg.hidden, derive_seed(cfg.seed, current), cfg.ridge});
    predicted = predict_position(trained, seg.test_features);
  }
  Prediction p;
  p.current = current;
  p.target_time = track.records[target].t;
  p.actual = track.records[target].pos;
  p.predicted = predicted;
  p.error_nm = haversine_km(p.actual, p.predicted, cfg.units) / cfg.units.km_per_nautical_mile;
  return p;
}

EvalResult evaluate_track(const Track& track, const EvalConfig& cfg) {
  const auto points = evaluation_points(track, cfg);
  EvalResult result;
  std::optional<ElmModel> shared;
  if (!cfg.retrain_each_step) {
    for (auto tc : points) {
      if (evaluation_ready(track, cfg, tc)) {
        shared = train_at(track, cfg, tc);
        break;
      }
    }
  }
  for (auto tc : points) {
    if (!cfg.retrain_each_step && !shared) {
      ++result.skipped;
      continue;
    }
    auto p = evaluate_at(track, cfg, tc, shared ? &*shared : nullptr);
    if (p) {
      result.predictions.push_back(*p);
    } else {
      ++result.skipped;
    }
  }
  result.histogram = error_histogram(result.predictions, cfg.bin_width_nm);
  return result;
}

}  // namespace aisdb
