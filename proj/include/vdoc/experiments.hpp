#pragma once

#include <optional>
#include <string>

#include "vdoc/boundary.hpp"
#include "vdoc/learn.hpp"

namespace vdoc {

// End-to-end protocols shared by the CLI and the acceptance suite.

/// Edge prediction on a cell grid. a: majority, b: TextTiling run on every
/// revision, c: logistic regression on gradient-magnitude cell features.
struct EdgeExperiment {
  FieldMode mode = FieldMode::normalized;
  GridSize grid;
  std::optional<KernelSpec> kernel;  // unset selects default_kernel
  CellDims cells;
  SplitPolicy split = {SplitPolicy::Kind::random, 0.7, 0};
  TrainOptions train;
  TextTilingOptions texttiling;
};

/// Requires boundary annotations.
TableRow run_edge_experiment(const VersionedDocument& doc, const std::string& article, const EdgeExperiment& config);

/// UNDO prediction per revision row. a: majority, b: hinge SVM on the term
/// frequencies of revision t, c: hinge SVM on the 21 derivative features.
/// Row t is labeled with the UNDO flag of revision t + 1.
struct UndoExperiment {
  FieldMode mode = FieldMode::normalized;
  std::size_t grid_s = 256;          // time resolution is one row per revision
  std::optional<KernelSpec> kernel;
  SplitPolicy split = {SplitPolicy::Kind::time_ordered, 0.7, 0};
  TrainOptions train;
};

/// Requires UNDO annotations and at least 3 revisions.
TableRow run_undo_experiment(const VersionedDocument& doc, const std::string& article, const UndoExperiment& config);

}  // namespace vdoc
