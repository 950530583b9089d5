#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vdoc/calculus.hpp"
#include "vdoc/field.hpp"

namespace vdoc {

// ---------------------------------------------------------------------------
// Edges

struct EdgeMap {
  std::size_t grid_s = 0;
  std::size_t grid_t = 0;
  std::vector<std::uint8_t> flags;  // row-major, time slow

  bool operator()(std::size_t s, std::size_t t) const { return flags[t * grid_s + s] != 0; }
  std::size_t count() const;
};

/// Flags non-maximum-suppressed local maxima. A node is kept when it is >= all
/// of its 8 neighbours, strictly greater than at least one, has no equal
/// neighbour earlier in row-major order, and reaches
/// relative_threshold * global maximum (with a positive maximum).
EdgeMap detect_edges(const ScalarField& magnitude, double relative_threshold = 0.2);

void write_edges_csv(const EdgeMap& edges, std::ostream& out);

/// A point of Omega in field coordinates.
struct SpacePoint {
  double s;
  double t;
};

/// Annotated section boundaries as points of Omega: offset o of revision j maps
/// to (o / N(j), j + 0.5) in normalized mode, (o, j + 0.5) otherwise.
std::vector<SpacePoint> boundary_points(const VersionedDocument& doc, FieldMode mode);

// ---------------------------------------------------------------------------
// Cell grid

inline constexpr std::size_t cell_statistics = 4;        // min, max, mean, median
inline constexpr std::size_t cell_neighbourhood = 9;     // 3 x 3
inline constexpr std::size_t cell_feature_length = cell_statistics * cell_neighbourhood;

struct CellDims {
  std::size_t space = 20;
  std::size_t time = 20;
};

struct CellGrid {
  std::size_t cells_s = 0;
  std::size_t cells_t = 0;
  std::vector<std::uint8_t> labels;           // row-major, time slow
  std::vector<std::vector<double>> features;  // cell_feature_length each

  std::size_t size() const { return labels.size(); }
};

/// Cell (i, j) covering [i I/A, (i+1) I/A) x [j J/B, (j+1) J/B) is labeled 1
/// iff a ground-truth point falls in it. Features concatenate
/// (min, max, mean, median) of the magnitude nodes inside each of the 3 x 3
/// neighbouring cells, replicating border cells. A cell without nodes uses the
/// node nearest its centre.
CellGrid build_cell_grid(std::span<const SpacePoint> ground_truth, const ScalarField& magnitude,
                         CellDims cells);

/// Cell index containing a point, clamped into the grid.
std::size_t cell_of(const SpacePoint& p, const Extent& extent, CellDims cells);

// ---------------------------------------------------------------------------
// Distances and segmentation

/// sqrt(sum_i (sqrt u_i - sqrt v_i)^2). Throws std::invalid_argument on a
/// negative component.
double hellinger(SparseView u, SparseView v);
double hellinger(std::span<const double> u, std::span<const double> v);

struct SpaceTimeSample {
  double s;
  double t;
  SparseView distribution;
};

/// d_H(u, v) + sqrt(c1 (s1 - s2)^2 + c2 (t1 - t2)^2).
double spacetime_distance(const SpaceTimeSample& a, const SpaceTimeSample& b, double c1, double c2);

enum class SegmentMethod { embedded_lloyd, exact_medoids };

const char* to_string(SegmentMethod method);
SegmentMethod segment_method_from_string(const std::string& text);

inline constexpr std::size_t exact_medoids_limit = 5000;

struct SegmentOptions {
  std::size_t k = 11;
  double c1 = -1.0;  // negative selects 1 / I^2
  double c2 = -1.0;  // negative selects 1 / J^2
  std::uint64_t seed = 0;
  SegmentMethod method = SegmentMethod::embedded_lloyd;
  std::size_t max_iterations = 100;
};

struct Segmentation {
  std::size_t k = 0;
  std::size_t grid_s = 0;
  std::size_t grid_t = 0;
  std::vector<std::uint32_t> assignment;  // row-major, time slow
  double c1 = 0.0;
  double c2 = 0.0;
  double objective = 0.0;
  /// embedded-lloyd: squared-distance cost after each assignment step.
  /// exact-medoids: total distance after BUILD and after each swap.
  std::vector<double> objective_trace;
  std::size_t iterations = 0;
};

/// embedded_lloyd clusters the embedding (sqrt gamma, sqrt(c1) s, sqrt(c2) t)
/// with seeded k-means++ and Lloyd iterations. Its Euclidean distance is
/// sqrt(d_H^2 + c1 ds^2 + c2 dt^2), within a factor sqrt(2) of the
/// space-time metric. exact_medoids runs PAM swaps under the exact metric and
/// is limited to exact_medoids_limit nodes.
Segmentation segment(const SpaceTimeField& field, const SegmentOptions& options);

void write_segmentation_csv(const Segmentation& seg, std::ostream& out);

/// Fraction of nodes whose cluster maps to the planted label under the best
/// one-to-one relabeling (exhaustive; k and label count at most 9).
double best_permutation_agreement(std::span<const std::uint32_t> assignment,
                                  std::span<const std::uint32_t> truth);

/// Planted segment label at every node: the token under the node in the
/// revision nearest to the node's time coordinate.
std::vector<std::uint32_t> planted_label_grid(const VersionedDocument& doc,
                                              const std::vector<std::vector<std::uint32_t>>& labels,
                                              FieldMode mode, std::size_t grid_s, std::size_t grid_t);

/// Fraction of nodes on a cluster boundary (4-neighbour label change) that lie
/// within `tolerance` space units of a ground-truth point on the same revision.
double boundary_alignment(std::span<const std::uint32_t> assignment, std::size_t grid_s,
                          std::size_t grid_t, const Extent& extent,
                          std::span<const SpacePoint> ground_truth, double tolerance);

}  // namespace vdoc
