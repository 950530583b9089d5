#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vdoc/boundary.hpp"
#include "vdoc/learn.hpp"

namespace vdoc {
namespace {

std::size_t cell_index_1d(double x, double extent, std::size_t cells) {
  if (!(extent > 0.0)) return 0;
  const double f = std::floor(x / extent * static_cast<double>(cells));
  if (!(f > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(f), cells - 1);
}

}  // namespace

std::size_t cell_of(const SpacePoint& p, const Extent& extent, CellDims cells) {
  return cell_index_1d(p.t, extent.time, cells.time) * cells.space + cell_index_1d(p.s, extent.space, cells.space);
}

CellGrid build_cell_grid(std::span<const SpacePoint> ground_truth, const ScalarField& magnitude, CellDims cells) {
  if (cells.space == 0 || cells.time == 0) throw std::invalid_argument("cell grid must be at least 1 x 1");
  const std::size_t A = cells.space, B = cells.time;
  const Extent& extent = magnitude.extent();

  CellGrid grid;
  grid.cells_s = A;
  grid.cells_t = B;
  grid.labels.assign(A * B, 0);
  for (const auto& p : ground_truth) grid.labels[cell_of(p, extent, cells)] = 1;

  // Node values per cell.
  std::vector<std::vector<double>> members(A * B);
  for (std::size_t t = 0; t < magnitude.grid_t(); ++t) {
    for (std::size_t s = 0; s < magnitude.grid_s(); ++s) {
      const SpacePoint p{magnitude.coord_s(s), magnitude.coord_t(t)};
      members[cell_of(p, extent, cells)].push_back(magnitude(s, t));
    }
  }
  std::vector<std::vector<double>> stats(A * B);
  for (std::size_t j = 0; j < B; ++j) {
    for (std::size_t i = 0; i < A; ++i) {
      auto& m = members[j * A + i];
      if (m.empty()) {
        const double cs = (static_cast<double>(i) + 0.5) * extent.space / static_cast<double>(A);
        const double ct = (static_cast<double>(j) + 0.5) * extent.time / static_cast<double>(B);
        const auto ns = std::min(static_cast<std::size_t>(std::max(0.0, cs / magnitude.spacing_s())),
                                 magnitude.grid_s() - 1);
        const auto nt = std::min(static_cast<std::size_t>(std::max(0.0, ct / magnitude.spacing_t())),
                                 magnitude.grid_t() - 1);
        m.push_back(magnitude(ns, nt));
      }
      stats[j * A + i] = summary_statistics(m);
    }
  }

  grid.features.resize(A * B);
  for (std::size_t j = 0; j < B; ++j) {
    for (std::size_t i = 0; i < A; ++i) {
      auto& f = grid.features[j * A + i];
      f.reserve(cell_feature_length);
      for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          const auto ni = static_cast<std::size_t>(
              std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(i) + di, 0, static_cast<std::ptrdiff_t>(A) - 1));
          const auto nj = static_cast<std::size_t>(
              std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(j) + dj, 0, static_cast<std::ptrdiff_t>(B) - 1));
          const auto& st = stats[nj * A + ni];
          f.insert(f.end(), st.begin(), st.end());
        }
      }
    }
  }
  return grid;
}

}  // namespace vdoc
