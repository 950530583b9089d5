#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vdoc/field.hpp"

namespace vdoc {

/// Real values on the same cell-centred grid as a SpaceTimeField.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(std::size_t grid_s, std::size_t grid_t, Extent extent, std::vector<double> values);
  ScalarField(std::size_t grid_s, std::size_t grid_t, Extent extent, double fill);

  std::size_t grid_s() const { return grid_s_; }
  std::size_t grid_t() const { return grid_t_; }
  std::size_t size() const { return values_.size(); }
  const Extent& extent() const { return extent_; }
  double spacing_s() const { return extent_.space / static_cast<double>(grid_s_); }
  double spacing_t() const { return extent_.time / static_cast<double>(grid_t_); }
  double coord_s(std::size_t a) const { return (static_cast<double>(a) + 0.5) * spacing_s(); }
  double coord_t(std::size_t b) const { return (static_cast<double>(b) + 0.5) * spacing_t(); }

  double operator()(std::size_t s, std::size_t t) const { return values_[t * grid_s_ + s]; }
  double& operator()(std::size_t s, std::size_t t) { return values_[t * grid_s_ + s]; }
  double at(std::size_t s, std::size_t t) const;

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double min() const;
  double max() const;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  std::size_t grid_s_ = 0;
  std::size_t grid_t_ = 0;
  Extent extent_;
  std::vector<double> values_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField sqrt(const ScalarField& f);

enum class Axis { space, time };

enum class DerivativeNorm { d1_space, d1_time, d2_space, d2_time };

const char* to_string(DerivativeNorm which);

/// Finite-difference partial of every word component at node (s, t):
/// central differences inside, one-sided at the grid edges.
SparseVector first_partial(const SpaceTimeField& field, Axis axis, std::size_t s, std::size_t t);

/// 3-point second difference; edge nodes reuse the stencil of their neighbour.
SparseVector second_partial(const SpaceTimeField& field, Axis axis, std::size_t s, std::size_t t);

/// Sum over the vocabulary of squared partials. Requires 2 samples on the
/// differentiated axis for first derivatives and 3 for second derivatives.
ScalarField derivative_norm_field(const SpaceTimeField& field, DerivativeNorm which);

/// One word component of the field.
ScalarField component_field(const SpaceTimeField& field, WordId w);

/// Signed first partial of one word component.
ScalarField component_partial(const SpaceTimeField& field, WordId w, Axis axis);

/// Trapezoidal integral of a first-derivative norm field across the other
/// axis: Axis::space gives h(s) (length S), Axis::time gives g(t) (length T).
/// The rule covers the whole domain, holding edge values over the outer
/// half cells.
std::vector<double> integrated_change(const ScalarField& norm_field, Axis axis);

/// Points (s, t) sampled at uniformly spaced r in [0, 1].
struct Curve {
  std::vector<std::pair<double, double>> samples;
};

/// Trapezoidal integral over r of ||s'(r) d_s gamma + t'(r) d_t gamma||^2 with
/// the tangent from finite differences and the gradient interpolated
/// bilinearly between grid nodes.
double directional_change(const SpaceTimeField& field, const Curve& curve);

/// "s,t,value" rows.
void write_scalar_csv(const ScalarField& field, std::ostream& out);
ScalarField read_scalar_csv(std::istream& in);
/// Two-column CSV with the given header, e.g. "s,h" or "t,g".
void write_curve_csv(const std::vector<double>& values, const char* header, std::ostream& out);
/// Reads "s,t" rows.
Curve read_curve_csv(std::istream& in);

/// Formats with 9 significant digits, '.' decimal separator.
std::string format_number(double v);

}  // namespace vdoc
