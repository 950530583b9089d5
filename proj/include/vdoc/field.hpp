#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "vdoc/corpus.hpp"
#include "vdoc/sparse.hpp"

namespace vdoc {

/// Separable Gaussian kernel with per-axis bandwidths.
struct KernelSpec {
  double space_bandwidth = 0.02;   // in space units of the field's extent
  double time_bandwidth = 2.0;     // in revisions
  /// Weights vanish beyond this many bandwidths on either axis.
  /// Infinity disables truncation.
  double truncation_radius = 3.0;

  void validate() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

inline constexpr double no_truncation = std::numeric_limits<double>::infinity();

/// exp(-(dx^2 / 2hs^2 + dy^2 / 2ht^2)), zero outside the truncation window.
double kernel_weight(double dx, double dy, const KernelSpec& kernel);

enum class FieldMode {
  normalized,      // every revision rescaled onto [0, 1]
  non_normalized,  // absolute word positions, shorter revisions zero-padded
};

const char* to_string(FieldMode mode);
FieldMode field_mode_from_string(const std::string& text);

struct GridSize {
  std::size_t space = 256;
  std::size_t time = 0;  // 0 selects one sample per revision
};

/// Domain [0, I] x [0, J]. Revision j occupies [j, j+1] in time; word i
/// (1-based) of revision j sits at (i - 0.5) / N(j) in normalized mode and at
/// i - 0.5 in non-normalized mode, where I = max_j N(j).
struct Extent {
  double space = 1.0;
  double time = 1.0;

  friend bool operator==(const Extent&, const Extent&) = default;
};

/// Smoothed word distribution at every node of a cell-centred S x T grid:
/// node (a, b) sits at ((a + 0.5) I / S, (b + 0.5) J / T). Immutable.
class SpaceTimeField {
 public:
  SpaceTimeField(std::size_t grid_s, std::size_t grid_t, FieldMode mode, Extent extent,
                 KernelSpec kernel, std::size_t vocabulary_size, std::uint64_t vocabulary_hash,
                 std::vector<std::uint64_t> offsets, std::vector<SparseEntry> entries,
                 std::vector<double> mass);

  std::size_t grid_s() const { return grid_s_; }
  std::size_t grid_t() const { return grid_t_; }
  std::size_t num_points() const { return grid_s_ * grid_t_; }
  FieldMode mode() const { return mode_; }
  const Extent& extent() const { return extent_; }
  const KernelSpec& kernel() const { return kernel_; }
  std::size_t vocabulary_size() const { return vocabulary_size_; }
  std::uint64_t vocabulary_hash() const { return vocabulary_hash_; }

  double spacing_s() const { return extent_.space / static_cast<double>(grid_s_); }
  double spacing_t() const { return extent_.time / static_cast<double>(grid_t_); }
  double coord_s(std::size_t a) const { return (static_cast<double>(a) + 0.5) * spacing_s(); }
  double coord_t(std::size_t b) const { return (static_cast<double>(b) + 0.5) * spacing_t(); }

  /// Row-major with time as the slow axis.
  std::size_t index(std::size_t s, std::size_t t) const { return t * grid_s_ + s; }

  /// Distribution at grid node (s, t); throws std::out_of_range.
  SparseView evaluate(std::size_t s, std::size_t t) const;
  SparseView at_index(std::size_t point) const;
  double mass(std::size_t s, std::size_t t) const;
  /// Value of one word at one node, 0 when absent.
  double component(std::size_t s, std::size_t t, WordId w) const;

  const std::vector<std::uint64_t>& offsets() const { return offsets_; }
  const std::vector<SparseEntry>& entries() const { return entries_; }
  const std::vector<double>& masses() const { return mass_; }

  friend bool operator==(const SpaceTimeField&, const SpaceTimeField&) = default;

 private:
  std::size_t grid_s_;
  std::size_t grid_t_;
  FieldMode mode_;
  Extent extent_;
  KernelSpec kernel_;
  std::size_t vocabulary_size_;
  std::uint64_t vocabulary_hash_;
  std::vector<std::uint64_t> offsets_;  // num_points + 1
  std::vector<SparseEntry> entries_;
  std::vector<double> mass_;
};

/// Extent a document occupies in the given mode.
Extent document_extent(const VersionedDocument& doc, FieldMode mode);

/// Default kernel: space bandwidth 2% of the space extent, 2 revisions in time.
KernelSpec default_kernel(const VersionedDocument& doc, FieldMode mode);

/// Kernel-smoothed space-time field.
///
/// Normalized mode renormalizes weights over the words inside the kernel
/// window, so every node is a probability vector. Non-normalized mode
/// normalizes over all padded positions (i <= max N) of the revisions in the
/// window; padding carries no mass, so nodes near padding have mass < 1.
///
/// Throws DataError for a zero-length revision in normalized mode, an empty
/// document, or a node whose kernel window holds no support at all.
SpaceTimeField build_field(const VersionedDocument& doc, FieldMode mode, GridSize grid,
                           const KernelSpec& kernel);

/// Binary container, little-endian:
///   "VDOCFLD1" | u32 S | u32 T | u8 mode | f64 I | f64 J | f64 hs | f64 ht |
///   f64 radius | u64 V | u64 vocabulary_hash | u64 nnz |
///   u64 offsets[S*T+1] | nnz * (u32 id, f64 value) | f64 mass[S*T]
void write_field(const SpaceTimeField& field, std::ostream& out);
SpaceTimeField read_field(std::istream& in);

}  // namespace vdoc
