#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "vdoc/error.hpp"
#include "vdoc/field.hpp"

using namespace vdoc;

namespace {

VersionedDocument doc_of(std::vector<Revision> revs, std::size_t V) {
  std::vector<std::string> words;
  for (std::size_t w = 0; w < V; ++w) words.push_back("w" + std::to_string(w));
  return VersionedDocument(std::move(revs), Vocabulary(words));
}

}  // namespace

TEST_CASE("kernel weight") {
  const KernelSpec k{0.1, 2.0, 3.0};
  CHECK(kernel_weight(0, 0, k) == 1.0);
  CHECK(kernel_weight(0.05, 1.0, k) == kernel_weight(-0.05, 1.0, k));
  CHECK(kernel_weight(0.05, 1.0, k) == kernel_weight(0.05, -1.0, k));
  CHECK(kernel_weight(0.1, 0, k) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(kernel_weight(0.31, 0, k) == 0.0);
  CHECK(kernel_weight(0, 6.5, k) == 0.0);
  const KernelSpec wide{0.1, 2.0, no_truncation};
  CHECK(kernel_weight(1.0, 0, wide) > 0.0);
  CHECK_THROWS(KernelSpec{0.0, 1.0, 3.0}.validate());
  CHECK_THROWS(KernelSpec{1.0, -1.0, 3.0}.validate());
  CHECK_THROWS(KernelSpec{1.0, 1.0, 0.0}.validate());
}

TEST_CASE("single-word document is a constant one-hot field") {
  const auto doc = doc_of({{1, 1, 1}}, 1);
  const auto f = build_field(doc, FieldMode::normalized, {7, 3}, KernelSpec{0.2, 1.0, 3.0});
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t s = 0; s < 7; ++s) {
      const auto v = f.evaluate(s, t);
      REQUIRE(v.size() == 1);
      CHECK(v[0].id == 1);
      CHECK(v[0].value == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("field matches the brute-force double sum") {
  Rng rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const auto doc = oracle::random_document(rng, 6, 25, 4);
    for (auto mode : {FieldMode::normalized, FieldMode::non_normalized}) {
      // Bandwidths avoid ties exactly at the truncation radius.
      const KernelSpec k = mode == FieldMode::normalized ? KernelSpec{0.137, 1.37, 3.0} : KernelSpec{4.1, 1.37, 3.0};
      const auto f = build_field(doc, mode, {10, 10}, k);
      const auto want = oracle::field(doc, mode, 10, 10, k);
      for (std::size_t p = 0; p < f.num_points(); ++p)
        for (std::size_t w = 1; w <= doc.vocabulary_size(); ++w)
          CHECK(std::abs(f.component(p % 10, p / 10, static_cast<WordId>(w)) - want[p][w - 1]) <= 1e-12);
    }
  }
}

TEST_CASE("simplex and mass invariants") {
  Rng rng(5);
  const auto doc = oracle::random_document(rng, 8, 40, 5);
  const auto n = build_field(doc, FieldMode::normalized, {32, 0}, default_kernel(doc, FieldMode::normalized));
  CHECK(n.grid_t() == doc.num_revisions());
  for (std::size_t p = 0; p < n.num_points(); ++p) {
    CHECK(std::abs(n.masses()[p] - 1.0) <= 1e-9);
    for (const auto& e : n.at_index(p)) CHECK(e.value >= 0.0);
  }
  const auto r = build_field(doc, FieldMode::non_normalized, {32, 0}, KernelSpec{2.0, 1.0, 3.0});
  for (double m : r.masses()) {
    CHECK(m >= 0.0);
    CHECK(m <= 1.0 + 1e-9);
  }
}

TEST_CASE("padding carries no mass") {
  const auto doc = doc_of({std::vector<WordId>(20, 1), {2, 2}}, 2);
  const auto f = build_field(doc, FieldMode::non_normalized, {20, 2}, KernelSpec{1.0, 0.1, 3.0});
  CHECK(f.evaluate(15, 1).empty());
  CHECK(f.mass(15, 1) == 0.0);
  CHECK(f.mass(15, 0) == doctest::Approx(1.0));
  CHECK(f.mass(0, 1) > 0.5);
}

TEST_CASE("field errors") {
  const auto doc = doc_of({{1, 2}, {}}, 2);
  CHECK_THROWS_WITH_AS(build_field(doc, FieldMode::normalized, {4, 0}, KernelSpec{}),
                       doctest::Contains("cannot normalize zero-length revision"), DataError);
  CHECK_NOTHROW(build_field(doc, FieldMode::non_normalized, {4, 0}, KernelSpec{0.5, 2.0, 3.0}));
  const auto ok = build_field(doc_of({{1, 2}}, 2), FieldMode::normalized, {4, 1}, KernelSpec{0.3, 1, 3});
  CHECK_THROWS_AS(ok.evaluate(4, 0), std::out_of_range);
  CHECK_THROWS_AS(ok.evaluate(0, 1), std::out_of_range);
  // A space bandwidth far below the token spacing leaves nodes without support.
  CHECK_THROWS_AS(build_field(doc_of({{1, 2}}, 2), FieldMode::normalized, {64, 1}, KernelSpec{1e-4, 1, 3}),
                  DataError);
}

TEST_CASE("vocabulary permutation permutes components exactly") {
  Rng rng(21);
  const auto doc = oracle::random_document(rng, 5, 30, 4);
  const std::size_t V = doc.vocabulary_size();
  std::vector<WordId> perm(V);
  for (std::size_t w = 0; w < V; ++w) perm[w] = static_cast<WordId>(V - w);  // reversal
  std::vector<Revision> revs = doc.revisions();
  for (auto& r : revs)
    for (auto& id : r) id = perm[id - 1];
  const VersionedDocument pd(revs, doc.vocabulary());
  const KernelSpec k{0.1, 1.0, 3.0};
  const auto f = build_field(doc, FieldMode::normalized, {16, 0}, k);
  const auto g = build_field(pd, FieldMode::normalized, {16, 0}, k);
  for (std::size_t t = 0; t < f.grid_t(); ++t)
    for (std::size_t s = 0; s < f.grid_s(); ++s)
      for (WordId w = 1; w <= V; ++w) CHECK(g.component(s, t, perm[w - 1]) == f.component(s, t, w));
}

TEST_CASE("locality of a single-token change") {
  std::vector<Revision> revs(6, Revision(50, 1));
  for (std::size_t j = 0; j < revs.size(); ++j)
    for (std::size_t i = 0; i < 50; i += 3) revs[j][i] = 2;
  const auto doc = doc_of(revs, 3);
  revs[2][25] = 3;
  const auto changed = doc_of(revs, 3);
  const KernelSpec k{0.05, 0.5, 3.0};
  const auto f = build_field(doc, FieldMode::normalized, {40, 0}, k);
  const auto g = build_field(changed, FieldMode::normalized, {40, 0}, k);
  const double x = 25.5 / 50, y = 2.5;
  std::size_t differing = 0;
  for (std::size_t t = 0; t < f.grid_t(); ++t)
    for (std::size_t s = 0; s < f.grid_s(); ++s) {
      const bool inside = std::abs(f.coord_s(s) - x) <= 3 * k.space_bandwidth &&
                          std::abs(f.coord_t(t) - y) <= 3 * k.time_bandwidth;
      const bool same = std::equal(f.evaluate(s, t).begin(), f.evaluate(s, t).end(), g.evaluate(s, t).begin(),
                                   g.evaluate(s, t).end());
      if (!inside) CHECK(same);
      if (!same) ++differing;
    }
  CHECK(differing > 0);
}

TEST_CASE("wide kernels converge to the global term frequency") {
  Rng rng(8);
  const auto doc = oracle::random_document(rng, 7, 30, 5);
  std::vector<double> tf(doc.vocabulary_size(), 0.0);
  for (const auto& r : doc.revisions())
    for (auto id : r) tf[id - 1] += 1.0 / static_cast<double>(doc.total_tokens());
  const auto f = build_field(doc, FieldMode::normalized, {9, 5}, KernelSpec{1e5, 1e5, no_truncation});
  for (std::size_t p = 0; p < f.num_points(); ++p)
    for (WordId w = 1; w <= doc.vocabulary_size(); ++w)
      CHECK(std::abs(f.component(p % 9, p / 9, w) - tf[w - 1]) <= 1e-6);
}

TEST_CASE("uniform random document tends to one half as the bandwidth grows") {
  SyntheticConfig cfg{{{0.5, 400, 0}}, 20, 2, 99};
  const auto doc = synthesize(cfg).document;
  double previous = 1.0;
  for (double hs : {0.01, 0.05, 0.2}) {
    const auto f = build_field(doc, FieldMode::normalized, {64, 0}, KernelSpec{hs, 2.0, 3.0});
    double worst = 0.0;
    for (std::size_t p = 0; p < f.num_points(); ++p)
      worst = std::max(worst, std::abs(f.component(p % 64, p / 64, 1) - 0.5));
    CHECK(worst < previous);
    previous = worst;
  }
  CHECK(previous < 0.05);
}

TEST_CASE("field serialization round-trips bit-exactly") {
  const auto doc = synthesize(SyntheticConfig::three_segment(2)).document;
  const auto f = build_field(doc, FieldMode::non_normalized, {50, 0}, default_kernel(doc, FieldMode::non_normalized));
  std::stringstream buf;
  write_field(f, buf);
  const std::string bytes = buf.str();
  CHECK(bytes.substr(0, 8) == "VDOCFLD1");
  const auto back = read_field(buf);
  CHECK(back == f);
  std::ostringstream again;
  write_field(back, again);
  CHECK(again.str() == bytes);

  std::istringstream bad(std::string("NOTAFIELD"));
  CHECK_THROWS_AS(read_field(bad), DataError);
  std::istringstream truncated(bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(read_field(truncated), DataError);
}
