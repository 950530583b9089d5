#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "vdoc/boundary.hpp"

namespace vdoc {

std::size_t EdgeMap::count() const {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
}

EdgeMap detect_edges(const ScalarField& magnitude, double relative_threshold) {
  if (!(relative_threshold >= 0.0 && relative_threshold <= 1.0))
    throw std::invalid_argument("relative threshold must lie in [0, 1]");
  const std::size_t S = magnitude.grid_s(), T = magnitude.grid_t();
  EdgeMap edges{S, T, std::vector<std::uint8_t>(S * T, 0)};
  const double peak = magnitude.max();
  if (!(peak > 0.0)) return edges;
  const double cutoff = relative_threshold * peak;

  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t s = 0; s < S; ++s) {
      const double v = magnitude(s, t);
      if (v < cutoff) continue;
      bool dominates = true;
      bool strictly_above_one = false;
      for (int dt = -1; dt <= 1 && dominates; ++dt) {
        for (int ds = -1; ds <= 1; ++ds) {
          if (ds == 0 && dt == 0) continue;
          const auto ns = static_cast<std::ptrdiff_t>(s) + ds;
          const auto nt = static_cast<std::ptrdiff_t>(t) + dt;
          if (ns < 0 || nt < 0 || ns >= static_cast<std::ptrdiff_t>(S) || nt >= static_cast<std::ptrdiff_t>(T)) continue;
          const double n = magnitude(static_cast<std::size_t>(ns), static_cast<std::size_t>(nt));
          // An equal neighbour earlier in row-major order owns the tie.
          const bool earlier = dt < 0 || (dt == 0 && ds < 0);
          if (n > v || (n == v && earlier)) {
            dominates = false;
            break;
          }
          if (v > n) strictly_above_one = true;
        }
      }
      if (dominates && strictly_above_one) edges.flags[t * S + s] = 1;
    }
  }
  return edges;
}

void write_edges_csv(const EdgeMap& edges, std::ostream& out) {
  out << "s,t,flag\n";
  for (std::size_t t = 0; t < edges.grid_t; ++t)
    for (std::size_t s = 0; s < edges.grid_s; ++s) out << s << ',' << t << ',' << (edges(s, t) ? 1 : 0) << '\n';
}

std::vector<SpacePoint> boundary_points(const VersionedDocument& doc, FieldMode mode) {
  std::vector<SpacePoint> points;
  for (std::size_t j = 0; j < doc.num_revisions(); ++j) {
    const auto& b = doc.annotation(j).boundaries;
    if (!b) continue;
    const double n = static_cast<double>(doc.length(j));
    for (auto offset : *b) {
      const double s = mode == FieldMode::normalized ? (n > 0 ? static_cast<double>(offset) / n : 0.0)
                                                     : static_cast<double>(offset);
      points.push_back({s, static_cast<double>(j) + 0.5});
    }
  }
  return points;
}

}  // namespace vdoc
