#include <algorithm>
#include <array>
#include <tuple>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "vdoc/calculus.hpp"
#include "vdoc/error.hpp"

namespace vdoc {
namespace {

std::size_t axis_size(const SpaceTimeField& f, Axis axis) { return axis == Axis::space ? f.grid_s() : f.grid_t(); }

double axis_spacing(const SpaceTimeField& f, Axis axis) {
  return axis == Axis::space ? f.spacing_s() : f.spacing_t();
}

SparseView neighbour(const SpaceTimeField& f, Axis axis, std::size_t s, std::size_t t, std::size_t k) {
  return axis == Axis::space ? f.evaluate(k, t) : f.evaluate(s, k);
}

void require_samples(const SpaceTimeField& f, Axis axis, std::size_t needed) {
  if (axis_size(f, axis) < needed)
    throw std::invalid_argument(std::string("grid needs at least ") + std::to_string(needed) + " samples along " +
                                (axis == Axis::space ? "space" : "time") + " for this derivative");
}

double sum_of_squares(SparseView v) {
  double sum = 0.0;
  for (const auto& e : v) sum += e.value * e.value;
  return sum;
}

}  // namespace

ScalarField::ScalarField(std::size_t grid_s, std::size_t grid_t, Extent extent, std::vector<double> values)
    : grid_s_(grid_s), grid_t_(grid_t), extent_(extent), values_(std::move(values)) {
  if (values_.size() != grid_s_ * grid_t_) throw std::invalid_argument("scalar field size does not match its grid");
}

ScalarField::ScalarField(std::size_t grid_s, std::size_t grid_t, Extent extent, double fill)
    : ScalarField(grid_s, grid_t, extent, std::vector<double>(grid_s * grid_t, fill)) {}

double ScalarField::at(std::size_t s, std::size_t t) const {
  if (s >= grid_s_ || t >= grid_t_) throw std::out_of_range("scalar field index out of range");
  return (*this)(s, t);
}

double ScalarField::min() const { return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end()); }

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  if (a.grid_s() != b.grid_s() || a.grid_t() != b.grid_t()) throw std::invalid_argument("scalar field grids differ");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] + b.values()[i];
  return ScalarField(a.grid_s(), a.grid_t(), a.extent(), std::move(v));
}

ScalarField sqrt(const ScalarField& f) {
  std::vector<double> v(f.values());
  for (auto& x : v) x = std::sqrt(x);
  return ScalarField(f.grid_s(), f.grid_t(), f.extent(), std::move(v));
}

const char* to_string(DerivativeNorm which) {
  switch (which) {
    case DerivativeNorm::d1_space: return "d1_space";
    case DerivativeNorm::d1_time: return "d1_time";
    case DerivativeNorm::d2_space: return "d2_space";
    case DerivativeNorm::d2_time: return "d2_time";
  }
  return "?";
}

SparseVector first_partial(const SpaceTimeField& field, Axis axis, std::size_t s, std::size_t t) {
  require_samples(field, axis, 2);
  const std::size_t n = axis_size(field, axis);
  const std::size_t k = axis == Axis::space ? s : t;
  const double h = axis_spacing(field, axis);
  std::size_t lo = k, hi = k;
  double span = h;
  if (k == 0) {
    hi = 1;
  } else if (k == n - 1) {
    lo = n - 2;
  } else {
    lo = k - 1;
    hi = k + 1;
    span = 2.0 * h;
  }
  auto diff = sparse_axpy(neighbour(field, axis, s, t, hi), -1.0, neighbour(field, axis, s, t, lo));
  for (auto& e : diff) e.value /= span;
  return diff;
}

SparseVector second_partial(const SpaceTimeField& field, Axis axis, std::size_t s, std::size_t t) {
  require_samples(field, axis, 3);
  const std::size_t n = axis_size(field, axis);
  const std::size_t k = axis == Axis::space ? s : t;
  const double h = axis_spacing(field, axis);
  const std::size_t centre = std::clamp<std::size_t>(k, 1, n - 2);
  auto v = sparse_axpy(neighbour(field, axis, s, t, centre - 1), -2.0, neighbour(field, axis, s, t, centre));
  v = sparse_axpy(v, 1.0, neighbour(field, axis, s, t, centre + 1));
  for (auto& e : v) e.value /= (h * h);
  return v;
}

ScalarField derivative_norm_field(const SpaceTimeField& field, DerivativeNorm which) {
  const Axis axis = (which == DerivativeNorm::d1_space || which == DerivativeNorm::d2_space) ? Axis::space : Axis::time;
  const bool second = which == DerivativeNorm::d2_space || which == DerivativeNorm::d2_time;
  require_samples(field, axis, second ? 3 : 2);
  ScalarField out(field.grid_s(), field.grid_t(), field.extent(), 0.0);
  for (std::size_t t = 0; t < field.grid_t(); ++t) {
    for (std::size_t s = 0; s < field.grid_s(); ++s) {
      const auto partial = second ? second_partial(field, axis, s, t) : first_partial(field, axis, s, t);
      out(s, t) = sum_of_squares(partial);
    }
  }
  return out;
}

ScalarField component_field(const SpaceTimeField& field, WordId w) {
  if (w == 0 || w > field.vocabulary_size()) throw std::out_of_range("word id " + std::to_string(w));
  ScalarField out(field.grid_s(), field.grid_t(), field.extent(), 0.0);
  for (std::size_t t = 0; t < field.grid_t(); ++t)
    for (std::size_t s = 0; s < field.grid_s(); ++s) out(s, t) = field.component(s, t, w);
  return out;
}

ScalarField component_partial(const SpaceTimeField& field, WordId w, Axis axis) {
  if (w == 0 || w > field.vocabulary_size()) throw std::out_of_range("word id " + std::to_string(w));
  ScalarField out(field.grid_s(), field.grid_t(), field.extent(), 0.0);
  for (std::size_t t = 0; t < field.grid_t(); ++t) {
    for (std::size_t s = 0; s < field.grid_s(); ++s) {
      const auto p = first_partial(field, axis, s, t);
      auto it = std::lower_bound(p.begin(), p.end(), w, [](const SparseEntry& e, WordId id) { return e.id < id; });
      out(s, t) = (it != p.end() && it->id == w) ? it->value : 0.0;
    }
  }
  return out;
}

std::vector<double> integrated_change(const ScalarField& norm_field, Axis axis) {
  const bool over_time = axis == Axis::space;  // h(s) integrates over t
  const std::size_t outer = over_time ? norm_field.grid_s() : norm_field.grid_t();
  const std::size_t inner = over_time ? norm_field.grid_t() : norm_field.grid_s();
  const double h = over_time ? norm_field.spacing_t() : norm_field.spacing_s();
  std::vector<double> result(outer, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    auto value = [&](std::size_t i) { return over_time ? norm_field(o, i) : norm_field(i, o); };
    // Half cells at both ends hold the edge value; the rest is the ordinary
    // trapezoid between nodes.
    double sum = 0.5 * h * (value(0) + value(inner - 1));
    for (std::size_t i = 0; i + 1 < inner; ++i) sum += 0.5 * h * (value(i) + value(i + 1));
    result[o] = sum;
  }
  return result;
}

double directional_change(const SpaceTimeField& field, const Curve& curve) {
  const auto& pts = curve.samples;
  if (pts.size() < 2) throw std::invalid_argument("curve needs at least 2 samples");
  require_samples(field, Axis::space, 2);
  require_samples(field, Axis::time, 2);
  const double I = field.extent().space, J = field.extent().time;
  const double slack = 1e-9 * std::max({1.0, I, J});
  for (const auto& [s, t] : pts) {
    if (!(s >= -slack && s <= I + slack && t >= -slack && t <= J + slack))
      throw std::invalid_argument("curve point (" + std::to_string(s) + ", " + std::to_string(t) +
                                  ") lies outside the domain");
  }

  const std::size_t K = pts.size();
  const double dr = 1.0 / static_cast<double>(K - 1);

  auto corners = [](double x, double spacing, std::size_t n) {
    const double f = std::clamp(x / spacing - 0.5, 0.0, static_cast<double>(n - 1));
    const auto i0 = static_cast<std::size_t>(std::floor(f));
    const auto i1 = std::min(i0 + 1, n - 1);
    return std::tuple<std::size_t, std::size_t, double>(i0, i1, f - static_cast<double>(i0));
  };

  std::vector<double> integrand(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    const std::size_t lo = k == 0 ? 0 : k - 1;
    const std::size_t hi = k == K - 1 ? K - 1 : k + 1;
    const double span = static_cast<double>(hi - lo) * dr;
    const double tangent_s = (pts[hi].first - pts[lo].first) / span;
    const double tangent_t = (pts[hi].second - pts[lo].second) / span;

    const auto [a0, a1, wa] = corners(pts[k].first, field.spacing_s(), field.grid_s());
    const auto [b0, b1, wb] = corners(pts[k].second, field.spacing_t(), field.grid_t());
    const std::array<std::tuple<std::size_t, std::size_t, double>, 4> nodes{{
        {a0, b0, (1.0 - wa) * (1.0 - wb)},
        {a1, b0, wa * (1.0 - wb)},
        {a0, b1, (1.0 - wa) * wb},
        {a1, b1, wa * wb},
    }};
    SparseVector directional;
    for (const auto& [a, b, w] : nodes) {
      if (w == 0.0) continue;
      directional = sparse_axpy(directional, w * tangent_s, first_partial(field, Axis::space, a, b));
      directional = sparse_axpy(directional, w * tangent_t, first_partial(field, Axis::time, a, b));
    }
    integrand[k] = sum_of_squares(directional);
  }
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < K; ++k) total += 0.5 * dr * (integrand[k] + integrand[k + 1]);
  return total;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_scalar_csv(const ScalarField& field, std::ostream& out) {
  out << "s,t,value\n";
  for (std::size_t t = 0; t < field.grid_t(); ++t)
    for (std::size_t s = 0; s < field.grid_s(); ++s) out << s << ',' << t << ',' << format_number(field(s, t)) << '\n';
}

ScalarField read_scalar_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("s,t,value", 0) != 0) throw DataError("scalar CSV must start with s,t,value");
  std::vector<std::tuple<std::size_t, std::size_t, double>> rows;
  std::size_t S = 0, T = 0, line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t s, t;
    double v;
    char c1, c2;
    if (!(row >> s >> c1 >> t >> c2 >> v) || c1 != ',' || c2 != ',')
      throw ParseError("scalar CSV line " + std::to_string(line_no), "expected s,t,value");
    rows.emplace_back(s, t, v);
    S = std::max(S, s + 1);
    T = std::max(T, t + 1);
  }
  if (rows.empty()) throw DataError("scalar CSV has no rows");
  ScalarField f(S, T, Extent{static_cast<double>(S), static_cast<double>(T)}, 0.0);
  for (const auto& [s, t, v] : rows) f(s, t) = v;
  return f;
}

void write_curve_csv(const std::vector<double>& values, const char* header, std::ostream& out) {
  out << header << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) out << i << ',' << format_number(values[i]) << '\n';
}

Curve read_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("curve CSV is empty");
  Curve curve;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    double s, t;
    char c;
    if (!(row >> s >> c >> t) || c != ',') throw ParseError("curve CSV line " + std::to_string(line_no), "expected s,t");
    curve.samples.emplace_back(s, t);
  }
  return curve;
}

}  // namespace vdoc
