#include <cmath>
#include <stdexcept>

#include "vdoc/boundary.hpp"

namespace vdoc {
namespace {

double checked_root(double x) {
  if (x < 0.0) throw std::invalid_argument("distribution has a negative component");
  return std::sqrt(x);
}

}  // namespace

double hellinger(SparseView u, SparseView v) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < u.size() || j < v.size()) {
    double d;
    if (j == v.size() || (i < u.size() && u[i].id < v[j].id)) {
      d = checked_root(u[i++].value);
    } else if (i == u.size() || v[j].id < u[i].id) {
      d = checked_root(v[j++].value);
    } else {
      d = checked_root(u[i++].value) - checked_root(v[j++].value);
    }
    sum += d * d;
  }
  return std::sqrt(sum);
}

double hellinger(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("distributions have different dimensions");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = checked_root(u[i]) - checked_root(v[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

double spacetime_distance(const SpaceTimeSample& a, const SpaceTimeSample& b, double c1, double c2) {
  if (c1 < 0.0 || c2 < 0.0) throw std::invalid_argument("space-time weights must be non-negative");
  const double ds = a.s - b.s;
  const double dt = a.t - b.t;
  return hellinger(a.distribution, b.distribution) + std::sqrt(c1 * ds * ds + c2 * dt * dt);
}

}  // namespace vdoc
