#include <stdexcept>

#include "vdoc/error.hpp"
#include "vdoc/experiments.hpp"

namespace vdoc {
namespace {

struct Outcome {
  EvalReport a, b, c;
};

Labels subset(const Labels& y, std::span<const std::size_t> idx) { return gather(y, idx); }

EvalReport majority(const Labels& y, const Split& s) {
  const Labels train = subset(y, s.train), test = subset(y, s.test);
  return evaluate(majority_baseline(train).predict(test.size()), test);
}

// A classifier cannot be fit on single-class training data; fall back to the
// constant predictor the data supports.
EvalReport fit_or_constant(const FeatureMatrix& x, const Labels& y, const Split& s, LossKind kind,
                           const TrainOptions& opts) {
  const FeatureMatrix xtr = gather(x, s.train), xte = gather(x, s.test);
  const Labels ytr = subset(y, s.train), yte = subset(y, s.test);
  bool pos = false, neg = false;
  for (auto v : ytr) (v ? pos : neg) = true;
  if (!(pos && neg)) return evaluate(Labels(yte.size(), pos ? 1 : 0), yte);
  const auto model = train(xtr, ytr, kind, opts);
  return evaluate(predict(model, xte).labels, yte);
}

}  // namespace

TableRow run_edge_experiment(const VersionedDocument& doc, const std::string& article, const EdgeExperiment& cfg) {
  if (!doc.has_boundaries()) throw DataError("edge experiment needs section boundary annotations");
  const KernelSpec kernel = cfg.kernel ? *cfg.kernel : default_kernel(doc, cfg.mode);
  const auto field = build_field(doc, cfg.mode, cfg.grid, kernel);
  const auto magnitude = sqrt(derivative_norm_field(field, DerivativeNorm::d1_space));
  const auto truth = boundary_points(doc, cfg.mode);
  const auto grid = build_cell_grid(truth, magnitude, cfg.cells);

  // TextTiling boundaries mapped into the same cells.
  Labels tiled(grid.size(), 0);
  for (std::size_t j = 0; j < doc.num_revisions(); ++j) {
    const auto& rev = doc.revision(j);
    const double n = static_cast<double>(rev.size());
    for (auto o : texttiling(rev, cfg.texttiling)) {
      const double s = cfg.mode == FieldMode::normalized ? static_cast<double>(o) / n : static_cast<double>(o);
      tiled[cell_of({s, static_cast<double>(j) + 0.5}, field.extent(), cfg.cells)] = 1;
    }
  }

  const Labels y(grid.labels.begin(), grid.labels.end());
  const auto s = split(y.size(), cfg.split);
  TableRow row;
  row.article = article;
  row.revisions = doc.num_revisions();
  row.vocabulary_size = doc.vocabulary().size();
  row.a = majority(y, s);
  row.b = evaluate(subset(tiled, s.test), subset(y, s.test));
  row.c = fit_or_constant(grid.features, y, s, LossKind::logistic, cfg.train);
  row.positive_rate = row.a.positive_rate;
  return row;
}

TableRow run_undo_experiment(const VersionedDocument& doc, const std::string& article, const UndoExperiment& cfg) {
  if (!doc.has_undo_flags()) throw DataError("undo experiment needs UNDO annotations");
  const std::size_t l = doc.num_revisions();
  if (l < 3) throw DataError("undo experiment needs at least 3 revisions");
  const KernelSpec kernel = cfg.kernel ? *cfg.kernel : default_kernel(doc, cfg.mode);
  const auto field = build_field(doc, cfg.mode, GridSize{cfg.grid_s, l}, kernel);
  const auto norms = compute_norm_fields(field);
  const auto h = integrated_change(derivative_norm_field(field, DerivativeNorm::d1_space), Axis::space);
  const auto g = integrated_change(derivative_norm_field(field, DerivativeNorm::d1_time), Axis::time);

  const std::size_t rows = l - 1;
  const std::size_t vocab = doc.vocabulary().size();
  FeatureMatrix derived, tf;
  Labels y;
  for (std::size_t t = 0; t < rows; ++t) {
    derived.push_back(undo_features(norms, h, g, t));
    std::vector<double> freq(vocab, 0.0);
    const auto& rev = doc.revision(t);
    for (auto id : rev) freq[id - 1] += 1.0;
    if (!rev.empty())
      for (auto& f : freq) f /= static_cast<double>(rev.size());
    tf.push_back(std::move(freq));
    const auto& next = doc.annotation(t + 1);
    y.push_back(next.undo.value_or(false) ? 1 : 0);
  }

  const auto s = split(rows, cfg.split);
  TableRow row;
  row.article = article;
  row.revisions = l;
  row.vocabulary_size = vocab;
  row.a = majority(y, s);
  row.b = fit_or_constant(tf, y, s, LossKind::hinge, cfg.train);
  row.c = fit_or_constant(derived, y, s, LossKind::hinge, cfg.train);
  row.positive_rate = row.a.positive_rate;
  return row;
}

}  // namespace vdoc
