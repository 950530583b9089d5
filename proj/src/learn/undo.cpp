#include <algorithm>
#include <stdexcept>
#include <string>

#include "vdoc/learn.hpp"

namespace vdoc {

NormFields compute_norm_fields(const SpaceTimeField& field) {
  return {sqrt(derivative_norm_field(field, DerivativeNorm::d1_space)),
          sqrt(derivative_norm_field(field, DerivativeNorm::d1_time)),
          sqrt(derivative_norm_field(field, DerivativeNorm::d2_space)),
          sqrt(derivative_norm_field(field, DerivativeNorm::d2_time))};
}

std::vector<double> summary_statistics(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("statistics of an empty set");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double sum = 0.0;
  for (double x : v) sum += x;
  const std::size_t n = v.size();
  const double median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  return {v.front(), v.back(), sum / static_cast<double>(n), median};
}

std::vector<double> undo_features(const NormFields& norms, std::span<const double> h, std::span<const double> g,
                                  std::size_t t_index) {
  const ScalarField* fields[] = {&norms.d1_space, &norms.d1_time, &norms.d2_space, &norms.d2_time};
  if (t_index >= g.size() || t_index >= norms.d1_space.grid_t())
    throw std::out_of_range("revision row " + std::to_string(t_index) + " out of range");
  std::vector<double> out;
  out.reserve(undo_feature_length);
  for (const auto* f : fields) {
    if (t_index >= f->grid_t()) throw std::out_of_range("revision row out of range");
    const auto begin = f->values().begin() + static_cast<std::ptrdiff_t>(t_index * f->grid_s());
    const std::vector<double> row(begin, begin + static_cast<std::ptrdiff_t>(f->grid_s()));
    const auto st = summary_statistics(row);
    out.insert(out.end(), st.begin(), st.end());
  }
  const auto hs = summary_statistics(h);
  out.insert(out.end(), hs.begin(), hs.end());
  out.push_back(g[t_index]);
  return out;
}

}  // namespace vdoc
