#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vdoc/error.hpp"
#include "vdoc/field.hpp"

namespace vdoc {
namespace {

double axis_weight(double d, double bandwidth, double radius) {
  if (std::abs(d) > radius * bandwidth) return 0.0;
  const double z = d / bandwidth;
  return std::exp(-0.5 * z * z);
}

// Index range [first, last) of positions p_i = (i + 0.5) * step, i < count,
// that may lie within `reach` of x. Callers still weight every candidate.
std::pair<std::size_t, std::size_t> window(double x, double reach, double step, std::size_t count) {
  if (!std::isfinite(reach)) return {0, count};
  const double lo = std::floor((x - reach) / step - 0.5) - 1.0;
  const double hi = std::ceil((x + reach) / step - 0.5) + 2.0;
  const auto clamp = [count](double v) {
    if (v <= 0.0) return std::size_t{0};
    if (v >= static_cast<double>(count)) return count;
    return static_cast<std::size_t>(v);
  };
  return {clamp(lo), clamp(hi)};
}

// Spatially smoothed content of one revision at one grid column.
struct ColumnSum {
  SparseVector content;  // sum of weights times one-hot vectors
  double support = 0.0;  // sum of weights over the normalizing positions
};

}  // namespace

void KernelSpec::validate() const {
  if (!(space_bandwidth > 0.0) || !std::isfinite(space_bandwidth))
    throw std::invalid_argument("space bandwidth must be positive and finite");
  if (!(time_bandwidth > 0.0) || !std::isfinite(time_bandwidth))
    throw std::invalid_argument("time bandwidth must be positive and finite");
  if (!(truncation_radius > 0.0)) throw std::invalid_argument("truncation radius must be positive");
}

double kernel_weight(double dx, double dy, const KernelSpec& kernel) {
  const double r = kernel.truncation_radius;
  if (std::abs(dx) > r * kernel.space_bandwidth || std::abs(dy) > r * kernel.time_bandwidth) return 0.0;
  const double zx = dx / kernel.space_bandwidth;
  const double zy = dy / kernel.time_bandwidth;
  return std::exp(-0.5 * (zx * zx + zy * zy));
}

const char* to_string(FieldMode mode) {
  return mode == FieldMode::normalized ? "normalized" : "raw";
}

FieldMode field_mode_from_string(const std::string& text) {
  if (text == "normalized") return FieldMode::normalized;
  if (text == "raw" || text == "non-normalized") return FieldMode::non_normalized;
  throw std::invalid_argument("unknown field mode '" + text + "' (expected normalized|raw)");
}

SpaceTimeField::SpaceTimeField(std::size_t grid_s, std::size_t grid_t, FieldMode mode, Extent extent,
                               KernelSpec kernel, std::size_t vocabulary_size, std::uint64_t vocabulary_hash,
                               std::vector<std::uint64_t> offsets, std::vector<SparseEntry> entries,
                               std::vector<double> mass)
    : grid_s_(grid_s),
      grid_t_(grid_t),
      mode_(mode),
      extent_(extent),
      kernel_(kernel),
      vocabulary_size_(vocabulary_size),
      vocabulary_hash_(vocabulary_hash),
      offsets_(std::move(offsets)),
      entries_(std::move(entries)),
      mass_(std::move(mass)) {
  if (grid_s_ == 0 || grid_t_ == 0) throw std::invalid_argument("field grid must be at least 1 x 1");
  const auto n = grid_s_ * grid_t_;
  if (offsets_.size() != n + 1 || mass_.size() != n || offsets_.front() != 0 ||
      offsets_.back() != entries_.size())
    throw DataError("field storage does not match its grid");
  for (std::size_t p = 0; p < n; ++p) {
    if (offsets_[p + 1] < offsets_[p]) throw DataError("field offsets decrease");
  }
}

SparseView SpaceTimeField::at_index(std::size_t point) const {
  if (point >= num_points()) throw std::out_of_range("field point " + std::to_string(point));
  return SparseView(entries_).subspan(offsets_[point], offsets_[point + 1] - offsets_[point]);
}

SparseView SpaceTimeField::evaluate(std::size_t s, std::size_t t) const {
  if (s >= grid_s_ || t >= grid_t_)
    throw std::out_of_range("grid index (" + std::to_string(s) + ", " + std::to_string(t) + ") outside " +
                            std::to_string(grid_s_) + " x " + std::to_string(grid_t_));
  return at_index(index(s, t));
}

double SpaceTimeField::mass(std::size_t s, std::size_t t) const {
  evaluate(s, t);
  return mass_[index(s, t)];
}

double SpaceTimeField::component(std::size_t s, std::size_t t, WordId w) const {
  const auto v = evaluate(s, t);
  auto it = std::lower_bound(v.begin(), v.end(), w, [](const SparseEntry& e, WordId id) { return e.id < id; });
  return (it != v.end() && it->id == w) ? it->value : 0.0;
}

Extent document_extent(const VersionedDocument& doc, FieldMode mode) {
  Extent e;
  e.space = mode == FieldMode::normalized ? 1.0 : static_cast<double>(doc.max_length());
  e.time = static_cast<double>(doc.num_revisions());
  return e;
}

KernelSpec default_kernel(const VersionedDocument& doc, FieldMode mode) {
  KernelSpec k;
  k.space_bandwidth = 0.02 * document_extent(doc, mode).space;
  k.time_bandwidth = 2.0;
  k.truncation_radius = 3.0;
  return k;
}

SpaceTimeField build_field(const VersionedDocument& doc, FieldMode mode, GridSize grid, const KernelSpec& kernel) {
  kernel.validate();
  const std::size_t revisions = doc.num_revisions();
  const std::size_t S = grid.space;
  const std::size_t T = grid.time == 0 ? revisions : grid.time;
  if (S == 0) throw std::invalid_argument("space grid must have at least one sample");
  const bool normalized = mode == FieldMode::normalized;
  if (normalized) {
    for (std::size_t j = 0; j < revisions; ++j)
      if (doc.length(j) == 0) throw DataError("cannot normalize zero-length revision " + std::to_string(j));
  } else if (doc.max_length() == 0) {
    throw DataError("document has no tokens");
  }

  const Extent extent = document_extent(doc, mode);
  const double ds = extent.space / static_cast<double>(S);
  const double dt = extent.time / static_cast<double>(T);
  const double hs = kernel.space_bandwidth;
  const double ht = kernel.time_bandwidth;
  const double radius = kernel.truncation_radius;
  const std::size_t max_len = doc.max_length();
  const std::size_t V = doc.vocabulary_size();

  // Normalized time weights per row over the revisions in its window.
  std::vector<std::vector<std::pair<std::size_t, double>>> time_weights(T);
  for (std::size_t b = 0; b < T; ++b) {
    const double t = (static_cast<double>(b) + 0.5) * dt;
    const auto [first, last] = window(t, radius * ht, 1.0, revisions);
    double total = 0.0;
    for (std::size_t j = first; j < last; ++j) {
      const double w = axis_weight(t - (static_cast<double>(j) + 0.5), ht, radius);
      if (w > 0.0) {
        time_weights[b].emplace_back(j, w);
        total += w;
      }
    }
    if (total == 0.0)
      throw DataError("no revision inside the time kernel window of row " + std::to_string(b) +
                      "; increase the time bandwidth");
    for (auto& [j, w] : time_weights[b]) w /= total;
  }

  std::vector<SparseVector> point_values(S * T);
  std::vector<double> dense(V + 1, 0.0);
  std::vector<std::uint8_t> seen(V + 1, 0);
  std::vector<WordId> touched;
  auto add = [&](WordId id, double v) {
    if (!seen[id]) {
      seen[id] = 1;
      touched.push_back(id);
    }
    dense[id] += v;
  };
  std::vector<ColumnSum> columns(revisions);

  for (std::size_t a = 0; a < S; ++a) {
    const double s = (static_cast<double>(a) + 0.5) * ds;

    // Padding positions normalize every revision identically.
    double padded_support = 0.0;
    if (!normalized) {
      const auto [first, last] = window(s, radius * hs, 1.0, max_len);
      for (std::size_t i = first; i < last; ++i)
        padded_support += axis_weight(s - (static_cast<double>(i) + 0.5), hs, radius);
    }

    for (std::size_t j = 0; j < revisions; ++j) {
      const auto& tokens = doc.revision(j);
      const std::size_t n = tokens.size();
      ColumnSum& col = columns[j];
      col.content.clear();
      col.support = normalized ? 0.0 : padded_support;
      if (n == 0) continue;
      const double step = normalized ? 1.0 / static_cast<double>(n) : 1.0;
      const auto [first, last] = window(s, radius * hs, step, n);
      touched.clear();
      for (std::size_t i = first; i < last; ++i) {
        const double w = axis_weight(s - (static_cast<double>(i) + 0.5) * step, hs, radius);
        if (w == 0.0) continue;
        add(tokens[i], w);
        if (normalized) col.support += w;
      }
      std::sort(touched.begin(), touched.end());
      col.content.reserve(touched.size());
      for (auto id : touched) {
        col.content.push_back({id, dense[id]});
        dense[id] = 0.0;
        seen[id] = 0;
      }
    }

    for (std::size_t b = 0; b < T; ++b) {
      double support = 0.0;
      touched.clear();
      for (const auto& [j, w] : time_weights[b]) {
        support += w * columns[j].support;
        for (const auto& e : columns[j].content) {
          add(e.id, w * e.value);
        }
      }
      if (support == 0.0)
        throw DataError("empty kernel window at grid node (" + std::to_string(a) + ", " + std::to_string(b) +
                        "); increase the space bandwidth");
      std::sort(touched.begin(), touched.end());
      auto& out = point_values[b * S + a];
      out.reserve(touched.size());
      for (auto id : touched) {
        const double v = dense[id] / support;
        if (v > 0.0) out.push_back({id, v});
        dense[id] = 0.0;
        seen[id] = 0;
      }
    }
  }

  std::vector<std::uint64_t> offsets(S * T + 1, 0);
  std::vector<double> mass(S * T, 0.0);
  std::size_t nnz = 0;
  for (const auto& v : point_values) nnz += v.size();
  std::vector<SparseEntry> entries;
  entries.reserve(nnz);
  for (std::size_t p = 0; p < S * T; ++p) {
    entries.insert(entries.end(), point_values[p].begin(), point_values[p].end());
    offsets[p + 1] = entries.size();
    mass[p] = sparse_sum(point_values[p]);
    SparseVector().swap(point_values[p]);
  }
  return SpaceTimeField(S, T, mode, extent, kernel, V, doc.vocabulary().hash(), std::move(offsets),
                        std::move(entries), std::move(mass));
}

}  // namespace vdoc
