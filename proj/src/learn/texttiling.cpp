#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vdoc/learn.hpp"

namespace vdoc {
namespace {

std::vector<std::pair<WordId, double>> counts(std::span<const WordId> window) {
  std::vector<WordId> sorted(window.begin(), window.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<WordId, double>> out;
  for (auto id : sorted) {
    if (!out.empty() && out.back().first == id) out.back().second += 1.0;
    else out.emplace_back(id, 1.0);
  }
  return out;
}

double cosine(std::span<const WordId> left, std::span<const WordId> right) {
  const auto a = counts(left), b = counts(right);
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (const auto& [id, c] : a) aa += c * c;
  for (const auto& [id, c] : b) bb += c * c;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (b[j].first < a[i].first) ++j;
    else ab += a[i++].second * b[j++].second;
  }
  return aa > 0.0 && bb > 0.0 ? ab / std::sqrt(aa * bb) : 0.0;
}

}  // namespace

std::vector<std::size_t> texttiling(std::span<const WordId> tokens, const TextTilingOptions& options) {
  const std::size_t w = options.window;
  if (w == 0) throw std::invalid_argument("TextTiling window must be positive");
  if (tokens.size() < 2 * w) return {};
  const std::size_t spacing = options.min_spacing == 0 ? std::max<std::size_t>(1, w / 2) : options.min_spacing;

  // Gap g sits between tokens g - 1 and g.
  const std::size_t stride = options.stride == 0 ? w : options.stride;
  const std::size_t first = w, last = tokens.size() - w;
  std::vector<double> sim;
  for (std::size_t g = first; g <= last; g += stride)
    sim.push_back(cosine(tokens.subspan(g - w, w), tokens.subspan(g, w)));

  struct Valley {
    std::size_t gap;
    double depth;
  };
  std::vector<Valley> valleys;
  for (std::size_t i = 1; i + 1 < sim.size(); ++i) {
    if (!(sim[i] < sim[i - 1] && sim[i] <= sim[i + 1])) continue;
    std::size_t l = i, r = i;
    while (l > 0 && sim[l - 1] >= sim[l]) --l;
    while (r + 1 < sim.size() && sim[r + 1] >= sim[r]) ++r;
    valleys.push_back({first + i * stride, (sim[l] - sim[i]) + (sim[r] - sim[i])});
  }
  if (valleys.empty()) return {};

  double mean = 0.0;
  for (const auto& v : valleys) mean += v.depth;
  mean /= static_cast<double>(valleys.size());
  double var = 0.0;
  for (const auto& v : valleys) var += (v.depth - mean) * (v.depth - mean);
  const double cutoff = mean - std::sqrt(var / static_cast<double>(valleys.size())) / 2.0;

  std::stable_sort(valleys.begin(), valleys.end(), [](const Valley& a, const Valley& b) { return a.depth > b.depth; });
  std::vector<std::size_t> kept;
  for (const auto& v : valleys) {
    if (!(v.depth > 0.0) || v.depth < cutoff) continue;
    const bool clear = std::all_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return (k > v.gap ? k - v.gap : v.gap - k) >= spacing;
    });
    if (!clear) continue;
    kept.push_back(v.gap);
    if (options.max_boundaries != 0 && kept.size() == options.max_boundaries) break;
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace vdoc
