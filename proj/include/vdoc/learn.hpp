#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vdoc/calculus.hpp"

namespace vdoc {

using FeatureMatrix = std::vector<std::vector<double>>;
using Labels = std::vector<std::uint8_t>;

enum class LossKind { logistic, hinge };

const char* to_string(LossKind kind);
LossKind loss_kind_from_string(const std::string& text);

struct TrainOptions {
  double l2 = 1e-4;
  std::size_t epochs = 200;
  /// Step size in epoch e is learning_rate / (1 + e).
  double learning_rate = 0.1;
  /// Examples per update, visited in a seeded shuffle each epoch; 0 means
  /// the whole training set.
  std::size_t batch_size = 1;
  /// Discard an epoch whose updates raise the full training objective, so the
  /// recorded loss never increases.
  bool reject_worse_epochs = true;
  std::uint64_t seed = 0;
};

/// Per-feature (mean, stddev) frozen from training data. Zero-variance
/// features get stddev 1.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;

  static Standardizer fit(const FeatureMatrix& x);
  std::vector<double> apply(std::span<const double> row) const;
  FeatureMatrix apply(const FeatureMatrix& x) const;
};

struct LinearModel {
  LossKind kind = LossKind::logistic;
  std::vector<double> weights;
  double bias = 0.0;
  Standardizer standardizer;
  /// Full training objective after each epoch.
  std::vector<double> loss_history;
};

struct LossGradient {
  double loss = 0.0;
  std::vector<double> weights;
  double bias = 0.0;
};

/// Mean loss over `batch` plus (l2 / 2) ||w||^2 on standardized rows, with
/// its gradient (a subgradient for the hinge loss, zero at the kink).
LossGradient loss_and_gradient(LossKind kind, std::span<const double> weights, double bias,
                               const FeatureMatrix& standardized, std::span<const std::uint8_t> y,
                               std::span<const std::size_t> batch, double l2);

/// L2-regularized linear classifier by shuffled (mini-)batch SGD.
/// Throws std::invalid_argument for "degenerate labels" or shape mismatch.
LinearModel train(const FeatureMatrix& x, std::span<const std::uint8_t> y, LossKind kind,
                  const TrainOptions& options = {});

struct Prediction {
  Labels labels;
  std::vector<double> scores;
};

/// label = (w . standardize(x) + b >= 0).
Prediction predict(const LinearModel& model, const FeatureMatrix& x);

std::string model_to_json(const LinearModel& model);
LinearModel model_from_json(const std::string& text);

/// Always predicts the more frequent training label (ties: negative).
struct MajorityBaseline {
  bool label = false;
  Labels predict(std::size_t n) const { return Labels(n, label ? 1 : 0); }
};

MajorityBaseline majority_baseline(std::span<const std::uint8_t> y_train);

struct EvalReport {
  double accuracy = 0.0;
  double f1 = 0.0;
  double positive_rate = 0.0;  // p(y) of the actual labels
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

EvalReport evaluate(std::span<const std::uint8_t> predicted, std::span<const std::uint8_t> actual);

struct SplitPolicy {
  enum class Kind { random, time_ordered } kind = Kind::random;
  double fraction = 0.7;
  std::uint64_t seed = 0;

  /// "random:0.7" or "time:0.7".
  static SplitPolicy parse(const std::string& text, std::uint64_t seed = 0);
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Train gets round(fraction * n) indices clamped to [1, n - 1]; both parts
/// are returned in increasing order.
Split split(std::size_t n, const SplitPolicy& policy);

template <typename T>
std::vector<T> gather(const std::vector<T>& values, std::span<const std::size_t> indices) {
  std::vector<T> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(values.at(i));
  return out;
}

// ---------------------------------------------------------------------------
// TextTiling baseline

struct TextTilingOptions {
  std::size_t window = 20;        // tokens per side of each gap
  std::size_t stride = 0;         // tokens between gaps; 0 selects window
  std::size_t min_spacing = 0;    // 0 selects window / 2
  std::size_t max_boundaries = 0; // 0 means no cap
};

/// Cosine similarity of the w tokens left and right of each gap, depth score
/// at every similarity valley, boundaries at valleys with positive depth
/// >= mean - stddev / 2 of the valley depths, taken deepest first and kept
/// at least min_spacing apart. Returns token offsets of the boundaries.
std::vector<std::size_t> texttiling(std::span<const WordId> tokens, const TextTilingOptions& options = {});

// ---------------------------------------------------------------------------
// UNDO prediction features

inline constexpr std::size_t undo_feature_length = 21;

/// The four derivative norms (not squared) in the order d1_space, d1_time,
/// d2_space, d2_time.
struct NormFields {
  ScalarField d1_space;
  ScalarField d1_time;
  ScalarField d2_space;
  ScalarField d2_time;
};

NormFields compute_norm_fields(const SpaceTimeField& field);

/// (min, max, mean, median) over s of each norm field's row t, then of h(s),
/// then g(t): 21 values.
std::vector<double> undo_features(const NormFields& norms, std::span<const double> h,
                                  std::span<const double> g, std::size_t t_index);

/// (min, max, mean, median); median of an even count averages the middle pair.
std::vector<double> summary_statistics(std::span<const double> values);

// ---------------------------------------------------------------------------
// Reports

struct TableRow {
  std::string article;
  std::size_t revisions = 0;
  std::size_t vocabulary_size = 0;
  double positive_rate = 0.0;
  EvalReport a, b, c;
};

/// Aligned text table: Article, Revisions, Voc. Size, p(y), Accuracy a b c,
/// F1 Measure a b c.
std::string format_table(std::span<const TableRow> rows);
std::string table_to_json(std::span<const TableRow> rows);

}  // namespace vdoc
