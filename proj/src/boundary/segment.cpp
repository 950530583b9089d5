#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "vdoc/boundary.hpp"
#include "vdoc/error.hpp"
#include "vdoc/rng.hpp"

namespace vdoc {
namespace {

// Node embedding (sqrt gamma, sqrt(c1) s, sqrt(c2) t) with dense centres.
class Embedding {
 public:
  Embedding(const SpaceTimeField& field, double c1, double c2)
      : field_(field), dims_(field.vocabulary_size() + 1), n_(field.num_points()) {
    roots_.resize(field.entries().size());
    for (std::size_t i = 0; i < roots_.size(); ++i) roots_[i] = std::sqrt(field.entries()[i].value);
    xs_.resize(n_);
    xt_.resize(n_);
    const double ws = std::sqrt(c1), wt = std::sqrt(c2);
    for (std::size_t t = 0; t < field.grid_t(); ++t) {
      for (std::size_t s = 0; s < field.grid_s(); ++s) {
        xs_[field.index(s, t)] = ws * field.coord_s(s);
        xt_[field.index(s, t)] = wt * field.coord_t(t);
      }
    }
  }

  std::size_t size() const { return n_; }

  struct Centre {
    std::vector<double> word;  // indexed by id
    double norm2 = 0.0;        // squared norm of the word part
    double s = 0.0;
    double t = 0.0;
  };

  Centre centre_at(std::size_t p) const {
    Centre c;
    c.word.assign(dims_, 0.0);
    for_each(p, [&](WordId id, double r) { c.word[id] = r; });
    finish(c);
    c.s = xs_[p];
    c.t = xt_[p];
    return c;
  }

  void finish(Centre& c) const {
    c.norm2 = 0.0;
    for (double x : c.word) c.norm2 += x * x;
  }

  double distance2(std::size_t p, const Centre& c) const {
    double d = c.norm2;
    for_each(p, [&](WordId id, double r) {
      const double cw = c.word[id];
      d += (r - cw) * (r - cw) - cw * cw;
    });
    const double ds = xs_[p] - c.s, dt = xt_[p] - c.t;
    return std::max(0.0, d) + ds * ds + dt * dt;
  }

  std::vector<Centre> means(const std::vector<std::uint32_t>& assignment, std::size_t k,
                            std::vector<std::size_t>& counts) const {
    std::vector<Centre> centres(k);
    counts.assign(k, 0);
    for (auto& c : centres) c.word.assign(dims_, 0.0);
    for (std::size_t p = 0; p < n_; ++p) {
      auto& c = centres[assignment[p]];
      ++counts[assignment[p]];
      for_each(p, [&](WordId id, double r) { c.word[id] += r; });
      c.s += xs_[p];
      c.t += xt_[p];
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] == 0) continue;
      const double inv = 1.0 / static_cast<double>(counts[j]);
      for (auto& x : centres[j].word) x *= inv;
      centres[j].s *= inv;
      centres[j].t *= inv;
      finish(centres[j]);
    }
    return centres;
  }

 private:
  template <typename F>
  void for_each(std::size_t p, F&& f) const {
    const auto begin = field_.offsets()[p], end = field_.offsets()[p + 1];
    for (auto i = begin; i < end; ++i) f(field_.entries()[i].id, roots_[i]);
  }

  const SpaceTimeField& field_;
  std::size_t dims_;
  std::size_t n_;
  std::vector<double> roots_;
  std::vector<double> xs_, xt_;
};

void assign(const Embedding& e, const std::vector<Embedding::Centre>& centres, std::vector<std::uint32_t>& labels,
            std::vector<double>& d2) {
  for (std::size_t p = 0; p < e.size(); ++p) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t arg = 0;
    for (std::size_t j = 0; j < centres.size(); ++j) {
      const double d = e.distance2(p, centres[j]);
      if (d < best) {
        best = d;
        arg = static_cast<std::uint32_t>(j);
      }
    }
    labels[p] = arg;
    d2[p] = best;
  }
}

Segmentation lloyd(const SpaceTimeField& field, const SegmentOptions& o, double c1, double c2) {
  const Embedding e(field, c1, c2);
  const std::size_t n = e.size(), k = o.k;
  Rng rng(o.seed);

  // k-means++ seeding.
  std::vector<Embedding::Centre> centres;
  centres.push_back(e.centre_at(static_cast<std::size_t>(rng.below(n))));
  std::vector<double> nearest(n);
  for (std::size_t p = 0; p < n; ++p) nearest[p] = e.distance2(p, centres[0]);
  while (centres.size() < k) {
    const double total = std::accumulate(nearest.begin(), nearest.end(), 0.0);
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double running = 0.0;
      pick = n - 1;
      for (std::size_t p = 0; p < n; ++p) {
        running += nearest[p];
        if (running > target && nearest[p] > 0.0) {
          pick = p;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.below(n));
    }
    centres.push_back(e.centre_at(pick));
    for (std::size_t p = 0; p < n; ++p) nearest[p] = std::min(nearest[p], e.distance2(p, centres.back()));
  }

  Segmentation seg;
  seg.assignment.assign(n, 0);
  std::vector<double> d2(n);
  std::vector<std::uint32_t> previous;
  std::vector<std::size_t> counts;
  for (std::size_t it = 0; it < o.max_iterations; ++it) {
    assign(e, centres, seg.assignment, d2);
    seg.objective_trace.push_back(std::accumulate(d2.begin(), d2.end(), 0.0));
    seg.iterations = it + 1;
    if (seg.assignment == previous) break;
    previous = seg.assignment;
    centres = e.means(seg.assignment, k, counts);
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] != 0) continue;
      // Reseed an empty cluster at the node farthest from its centre.
      const auto far = static_cast<std::size_t>(std::max_element(d2.begin(), d2.end()) - d2.begin());
      centres[j] = e.centre_at(far);
      d2[far] = 0.0;
    }
  }
  seg.objective = seg.objective_trace.back();
  return seg;
}

class PackedDistances {
 public:
  explicit PackedDistances(std::size_t n) : n_(n), d_(n * (n - 1) / 2) {}
  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return d_[offset(i) + (j - i - 1)];
  }
  double& at(std::size_t i, std::size_t j) { return d_[offset(i) + (j - i - 1)]; }  // i < j

 private:
  std::size_t offset(std::size_t i) const { return i * (2 * n_ - i - 1) / 2; }
  std::size_t n_;
  std::vector<double> d_;
};

Segmentation medoids(const SpaceTimeField& field, const SegmentOptions& o, double c1, double c2) {
  const std::size_t n = field.num_points(), k = o.k;
  if (n > exact_medoids_limit)
    throw std::invalid_argument("exact-medoids is limited to " + std::to_string(exact_medoids_limit) +
                                " grid points (field has " + std::to_string(n) +
                                "); use embedded-lloyd or a coarser grid");
  std::vector<SpaceTimeSample> samples(n);
  for (std::size_t t = 0; t < field.grid_t(); ++t)
    for (std::size_t s = 0; s < field.grid_s(); ++s)
      samples[field.index(s, t)] = {field.coord_s(s), field.coord_t(t), field.evaluate(s, t)};
  PackedDistances dist(std::max<std::size_t>(n, 2));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dist.at(i, j) = spacetime_distance(samples[i], samples[j], c1, c2);

  // BUILD: greedy medoid selection.
  std::vector<std::size_t> chosen;
  std::vector<double> d1(n, std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> is_medoid(n, 0);
  while (chosen.size() < k) {
    double best_gain = -std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_medoid[c]) continue;
      double cost = 0.0;
      for (std::size_t p = 0; p < n; ++p) cost += std::min(d1[p], dist(p, c));
      if (-cost > best_gain) {
        best_gain = -cost;
        best = c;
      }
    }
    chosen.push_back(best);
    is_medoid[best] = 1;
    for (std::size_t p = 0; p < n; ++p) d1[p] = std::min(d1[p], dist(p, best));
  }

  std::vector<std::uint32_t> label(n);
  std::vector<double> d2(n);
  auto refresh = [&] {
    double total = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      double first = std::numeric_limits<double>::infinity(), second = first;
      std::uint32_t arg = 0;
      for (std::size_t m = 0; m < k; ++m) {
        const double d = dist(p, chosen[m]);
        if (d < first) {
          second = first;
          first = d;
          arg = static_cast<std::uint32_t>(m);
        } else if (d < second) {
          second = d;
        }
      }
      d1[p] = first;
      d2[p] = second;
      label[p] = arg;
      total += first;
    }
    return total;
  };

  Segmentation seg;
  double cost = refresh();
  seg.objective_trace.push_back(cost);
  for (std::size_t it = 0; it < o.max_iterations; ++it) {
    double best_delta = 0.0;
    std::size_t best_m = 0, best_o = 0;
    for (std::size_t m = 0; m < k; ++m) {
      for (std::size_t c = 0; c < n; ++c) {
        if (is_medoid[c]) continue;
        double delta = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
          const double dc = dist(p, c);
          const double keep = label[p] == m ? d2[p] : d1[p];
          delta += std::min(keep, dc) - d1[p];
        }
        if (delta < best_delta) {
          best_delta = delta;
          best_m = m;
          best_o = c;
        }
      }
    }
    seg.iterations = it + 1;
    if (!(best_delta < -1e-12 * std::max(1.0, cost))) break;
    is_medoid[chosen[best_m]] = 0;
    chosen[best_m] = best_o;
    is_medoid[best_o] = 1;
    cost = refresh();
    seg.objective_trace.push_back(cost);
  }
  seg.assignment = label;
  seg.objective = cost;
  return seg;
}

}  // namespace

const char* to_string(SegmentMethod method) {
  return method == SegmentMethod::embedded_lloyd ? "embedded-lloyd" : "exact-medoids";
}

SegmentMethod segment_method_from_string(const std::string& text) {
  if (text == "embedded-lloyd") return SegmentMethod::embedded_lloyd;
  if (text == "exact-medoids") return SegmentMethod::exact_medoids;
  throw std::invalid_argument("unknown segmentation method '" + text + "' (expected embedded-lloyd|exact-medoids)");
}

Segmentation segment(const SpaceTimeField& field, const SegmentOptions& options) {
  if (options.k == 0) throw std::invalid_argument("k must be at least 1");
  if (options.k > field.num_points())
    throw std::invalid_argument("k = " + std::to_string(options.k) + " exceeds the number of grid points");
  const double c1 = options.c1 < 0.0 ? 1.0 / (field.extent().space * field.extent().space) : options.c1;
  const double c2 = options.c2 < 0.0 ? 1.0 / (field.extent().time * field.extent().time) : options.c2;
  Segmentation seg = options.method == SegmentMethod::embedded_lloyd ? lloyd(field, options, c1, c2)
                                                                     : medoids(field, options, c1, c2);
  seg.k = options.k;
  seg.grid_s = field.grid_s();
  seg.grid_t = field.grid_t();
  seg.c1 = c1;
  seg.c2 = c2;
  return seg;
}

void write_segmentation_csv(const Segmentation& seg, std::ostream& out) {
  out << "s,t,cluster\n";
  for (std::size_t t = 0; t < seg.grid_t; ++t)
    for (std::size_t s = 0; s < seg.grid_s; ++s) out << s << ',' << t << ',' << seg.assignment[t * seg.grid_s + s] << '\n';
}

double best_permutation_agreement(std::span<const std::uint32_t> assignment, std::span<const std::uint32_t> truth) {
  if (assignment.size() != truth.size() || assignment.empty())
    throw std::invalid_argument("assignment and truth must be non-empty and equally long");
  const std::size_t k = *std::max_element(assignment.begin(), assignment.end()) + 1;
  const std::size_t labels = *std::max_element(truth.begin(), truth.end()) + 1;
  const std::size_t m = std::max(k, labels);
  if (m > 9) throw std::invalid_argument("best-permutation agreement supports at most 9 clusters and labels");
  std::vector<std::size_t> confusion(m * m, 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) ++confusion[assignment[i] * m + truth[i]];
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hits = 0;
    for (std::size_t c = 0; c < m; ++c) hits += confusion[c * m + perm[c]];
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(assignment.size());
}

std::vector<std::uint32_t> planted_label_grid(const VersionedDocument& doc,
                                              const std::vector<std::vector<std::uint32_t>>& labels, FieldMode mode,
                                              std::size_t grid_s, std::size_t grid_t) {
  if (labels.size() != doc.num_revisions()) throw std::invalid_argument("labels must cover every revision");
  std::uint32_t padding = 0;
  for (const auto& row : labels)
    for (auto l : row) padding = std::max(padding, l + 1);
  const Extent extent = document_extent(doc, mode);
  std::vector<std::uint32_t> grid(grid_s * grid_t);
  for (std::size_t b = 0; b < grid_t; ++b) {
    const double t = (static_cast<double>(b) + 0.5) * extent.time / static_cast<double>(grid_t);
    const auto j = std::min(static_cast<std::size_t>(t), doc.num_revisions() - 1);
    const std::size_t n = doc.length(j);
    for (std::size_t a = 0; a < grid_s; ++a) {
      const double s = (static_cast<double>(a) + 0.5) * extent.space / static_cast<double>(grid_s);
      const double pos = mode == FieldMode::normalized ? s * static_cast<double>(n) : s;
      const auto i = static_cast<std::size_t>(pos);
      grid[b * grid_s + a] = i < n ? labels[j].at(i) : padding;
    }
  }
  return grid;
}

double boundary_alignment(std::span<const std::uint32_t> assignment, std::size_t grid_s, std::size_t grid_t,
                          const Extent& extent, std::span<const SpacePoint> ground_truth, double tolerance) {
  if (assignment.size() != grid_s * grid_t) throw std::invalid_argument("assignment does not match the grid");
  const double ds = extent.space / static_cast<double>(grid_s);
  const double dt = extent.time / static_cast<double>(grid_t);
  std::size_t on_boundary = 0, aligned = 0;
  for (std::size_t b = 0; b < grid_t; ++b) {
    for (std::size_t a = 0; a < grid_s; ++a) {
      const auto c = assignment[b * grid_s + a];
      const bool edge = (a + 1 < grid_s && assignment[b * grid_s + a + 1] != c) ||
                        (a > 0 && assignment[b * grid_s + a - 1] != c) ||
                        (b + 1 < grid_t && assignment[(b + 1) * grid_s + a] != c) ||
                        (b > 0 && assignment[(b - 1) * grid_s + a] != c);
      if (!edge) continue;
      ++on_boundary;
      const double s = (static_cast<double>(a) + 0.5) * ds;
      const double revision = std::floor((static_cast<double>(b) + 0.5) * dt) + 0.5;
      for (const auto& p : ground_truth) {
        if (p.t == revision && std::abs(p.s - s) <= tolerance) {
          ++aligned;
          break;
        }
      }
    }
  }
  return on_boundary == 0 ? 0.0 : static_cast<double>(aligned) / static_cast<double>(on_boundary);
}

}  // namespace vdoc
