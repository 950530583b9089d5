#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vdoc {

/// Vocabulary ids are 1-based; 0 never names a word.
using WordId = std::uint32_t;

struct SparseEntry {
  WordId id;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Entries sorted by strictly increasing id.
using SparseVector = std::vector<SparseEntry>;
using SparseView = std::span<const SparseEntry>;

/// Sum of entries.
double sparse_sum(SparseView v);

/// a + scale * b over the union of supports.
SparseVector sparse_axpy(SparseView a, double scale, SparseView b);

/// Expands into a dense vector indexed by id - 1.
std::vector<double> sparse_to_dense(SparseView v, std::size_t vocabulary_size);

}  // namespace vdoc
