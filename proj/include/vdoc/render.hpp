#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vdoc/calculus.hpp"

namespace vdoc {

/// Space runs horizontally, time runs downward (row b = time sample b).
struct ImageSpec {
  enum class Normalization { global_minmax, fixed } normalization = Normalization::global_minmax;
  double lo = 0.0;
  double hi = 1.0;

  static ImageSpec fixed_range(double lo, double hi) { return {Normalization::fixed, lo, hi}; }
};

/// Binary PGM: "P5\n<S> <T>\n255\n" then S*T bytes. Pixel
/// floor(255 (v - lo) / (hi - lo) + 0.5) after clamping to [lo, hi]. A
/// constant field under global min-max renders as 128.
std::string to_pgm(const ScalarField& field, const ImageSpec& spec = {});

/// PGM of cluster ids spread evenly over the gray range.
std::string segmentation_pgm(const std::vector<std::uint32_t>& assignment, std::size_t grid_s,
                             std::size_t grid_t, std::size_t k);

/// "s,t,ds,dt,magnitude" rows for an external quiver/contour plot.
void export_quiver(const ScalarField& ds, const ScalarField& dt, std::ostream& out);

}  // namespace vdoc
