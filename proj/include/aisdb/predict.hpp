#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "aisdb/model.hpp"
#include "aisdb/random.hpp"

namespace aisdb {

/// What each window minute contributes to a feature vector.
enum class FeatureMode : std::uint8_t {
  Position,        // lon, lat
  PositionSogCog,  // lon, lat, sog, cog
};

std::size_t values_per_minute(FeatureMode mode);

/// Sliding-window layout around a current index. All indices are record
/// positions in a minute-regular track.
struct SegmentationConfig {
  std::size_t feature_len = 10;  // l
  std::size_t horizon = 20;      // t_p
  std::size_t samples = 200;     // s
  std::size_t current = 0;       // t_c
  FeatureMode features = FeatureMode::Position;

  /// Throws SizingError when the oldest training window would start before index 0.
  void validate() const;
};

struct TrainingWindow {
  std::size_t first = 0;   // first feature index
  std::size_t last = 0;    // last feature index (inclusive)
  std::size_t target = 0;  // target index
};

/// Index layout only; no data access.
struct SegmentationPlan {
  std::vector<TrainingWindow> training;  // k = 0 .. s-1, newest first
  std::size_t test_first = 0;
  std::size_t test_last = 0;

  /// Largest index referenced by any window.
  [[nodiscard]] std::size_t max_index() const;
  [[nodiscard]] std::size_t min_index() const;
};

SegmentationPlan plan_segments(const SegmentationConfig& cfg);

struct Sample {
  std::vector<double> features;
  GeoPoint target{};
};

struct Segmentation {
  std::vector<Sample> training;
  std::vector<double> test_features;
};

/// Cuts training samples and the test window out of `track`.
/// Throws SizingError on insufficient history and ValidationError when the
/// referenced range is not minute-regular.
Segmentation segment(const Track& track, const SegmentationConfig& cfg);

/// Feature vector for the window [first, last], oldest minute first.
std::vector<double> window_features(const Track& track, std::size_t first, std::size_t last,
                                    FeatureMode mode);

struct ElmParams {
  std::size_t hidden = 100;  // L
  std::uint64_t seed = 42;
  double ridge = 1e-12;  // lambda

  void validate() const;
};

/// Single-hidden-layer network with random sigmoid nodes and least-squares
/// output weights. Targets are (lon, lat) in degrees.
struct ElmModel {
  Eigen::MatrixXd input_weights;   // L x d
  Eigen::VectorXd biases;          // L
  Eigen::MatrixXd output_weights;  // L x 2
  Eigen::VectorXd feature_min;     // d
  Eigen::VectorXd feature_max;     // d
  std::uint64_t seed = 0;
  double ridge = 0.0;

  [[nodiscard]] std::size_t input_dim() const { return static_cast<std::size_t>(input_weights.cols()); }
  [[nodiscard]] std::size_t hidden() const { return static_cast<std::size_t>(input_weights.rows()); }
};

/// Maps features into [-1, 1] with the model's training ranges.
Eigen::VectorXd normalize_features(const ElmModel& model, std::span<const double> features);

/// Sigmoid hidden-layer outputs for already-normalized inputs, one row per input.
Eigen::MatrixXd hidden_layer(const ElmModel& model, const Eigen::MatrixXd& normalized);

/// Hidden weights come from `params.seed`; output weights minimise
/// |H beta - T|^2 + ridge |beta|^2. With ridge == 0 the minimum-norm least
/// squares solution is used, so degenerate designs never fail.
ElmModel train_elm(std::span<const Sample> samples, const ElmParams& params);

/// Throws SizingError when the feature length does not match the model.
GeoPoint predict_position(const ElmModel& model, std::span<const double> features);

struct EvalConfig {
  std::size_t horizon = 20;
  std::size_t feature_len = 10;
  std::size_t samples = 200;
  std::size_t hidden = 100;
  std::uint64_t seed = 42;
  double ridge = 1e-12;
  std::size_t stride = 1;
  double bin_width_nm = 0.5;
  bool retrain_each_step = true;
  FeatureMode features = FeatureMode::Position;
  UnitConstants units{};

  void validate() const;
  /// Smallest current index with a full training history.
  [[nodiscard]] std::size_t first_current() const { return horizon + feature_len + samples - 1; }
};

struct Prediction {
  std::size_t current = 0;  // t_c
  Timestamp target_time{};
  GeoPoint actual{};
  GeoPoint predicted{};
  double error_nm = 0.0;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct ErrorHistogram {
  double bin_width = 0.5;
  std::vector<std::size_t> counts;  // bin k covers [k w, (k+1) w)

  [[nodiscard]] std::size_t total() const;
  friend bool operator==(const ErrorHistogram&, const ErrorHistogram&) = default;
};

ErrorHistogram error_histogram(std::span<const Prediction> predictions, double bin_width);

struct EvalResult {
  std::vector<Prediction> predictions;
  std::size_t skipped = 0;  // evaluation points whose window is not minute-regular
  ErrorHistogram histogram;
};

/// Current indices visited by the sliding evaluation. Throws SizingError when
/// the track cannot host a single evaluation.
std::vector<std::size_t> evaluation_points(const Track& track, const EvalConfig& cfg);

/// True when every minute from the oldest training window to the evaluation
/// target is present.
bool evaluation_ready(const Track& track, const EvalConfig& cfg, std::size_t current);

/// One train-and-predict step at `current`. `model` overrides per-step training
/// (train-once mode). Empty when the needed range is not minute-regular.
std::optional<Prediction> evaluate_at(const Track& track, const EvalConfig& cfg, std::size_t current,
                                      const ElmModel* model = nullptr);

/// Model trained once at the first evaluation point, for train-once mode.
ElmModel train_at(const Track& track, const EvalConfig& cfg, std::size_t current);

/// Serial sliding evaluation. See kernels.hpp for the parallel version.
EvalResult evaluate_track(const Track& track, const EvalConfig& cfg);

}  // namespace aisdb
