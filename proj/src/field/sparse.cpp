#include "vdoc/sparse.hpp"

namespace vdoc {

double sparse_sum(SparseView v) {
  double sum = 0.0;
  for (const auto& e : v) sum += e.value;
  return sum;
}

SparseVector sparse_axpy(SparseView a, double scale, SparseView b) {
  SparseVector out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].id < b[j].id)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].id < a[i].id) {
      out.push_back({b[j].id, scale * b[j].value});
      ++j;
    } else {
      out.push_back({a[i].id, a[i].value + scale * b[j].value});
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<double> sparse_to_dense(SparseView v, std::size_t vocabulary_size) {
  std::vector<double> dense(vocabulary_size, 0.0);
  for (const auto& e : v) dense.at(e.id - 1) = e.value;
  return dense;
}

}  // namespace vdoc
