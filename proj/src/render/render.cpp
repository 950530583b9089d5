#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "vdoc/render.hpp"

namespace vdoc {
namespace {

std::string header(std::size_t w, std::size_t h) {
  return "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
}

}  // namespace

std::string to_pgm(const ScalarField& field, const ImageSpec& spec) {
  if (field.size() == 0) throw std::invalid_argument("cannot render an empty field");
  double lo = spec.lo, hi = spec.hi;
  if (spec.normalization == ImageSpec::Normalization::global_minmax) {
    lo = field.min();
    hi = field.max();
  } else if (!(hi > lo)) {
    throw std::invalid_argument("fixed image range needs hi > lo");
  }
  std::string out = header(field.grid_s(), field.grid_t());
  for (double v : field.values()) {
    if (!std::isfinite(v)) throw std::invalid_argument("cannot render a non-finite value");
    double level = 128.0;
    if (hi > lo) level = std::floor(255.0 * (std::clamp(v, lo, hi) - lo) / (hi - lo) + 0.5);
    out.push_back(static_cast<char>(static_cast<unsigned char>(level)));
  }
  return out;
}

std::string segmentation_pgm(const std::vector<std::uint32_t>& assignment, std::size_t grid_s, std::size_t grid_t,
                             std::size_t k) {
  if (assignment.size() != grid_s * grid_t) throw std::invalid_argument("assignment does not match the grid");
  std::string out = header(grid_s, grid_t);
  for (auto c : assignment) {
    if (c >= k) throw std::invalid_argument("cluster id out of range");
    const unsigned level = k <= 1 ? 128u : static_cast<unsigned>((255 * c + (k - 1) / 2) / (k - 1));
    out.push_back(static_cast<char>(static_cast<unsigned char>(level)));
  }
  return out;
}

void export_quiver(const ScalarField& ds, const ScalarField& dt, std::ostream& out) {
  if (ds.grid_s() != dt.grid_s() || ds.grid_t() != dt.grid_t())
    throw std::invalid_argument("quiver components differ in shape");
  out << "s,t,ds,dt,magnitude\n";
  for (std::size_t t = 0; t < ds.grid_t(); ++t)
    for (std::size_t s = 0; s < ds.grid_s(); ++s)
      out << s << ',' << t << ',' << format_number(ds(s, t)) << ',' << format_number(dt(s, t)) << ','
          << format_number(std::hypot(ds(s, t), dt(s, t))) << '\n';
}

}  // namespace vdoc
