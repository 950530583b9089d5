#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "vdoc/learn.hpp"

using namespace vdoc;

namespace {

struct Toy {
  FeatureMatrix x;
  Labels y;
};

// Two gaussian blobs around (+-2, +-2) plus an uninformative third feature.
Toy blobs(std::uint64_t seed, std::size_t n, double sep) {
  Rng rng(seed);
  Toy t;
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = i % 2 == 0;
    const double c = pos ? sep : -sep;
    const auto gauss = [&] {
      return std::sqrt(-2.0 * std::log(1.0 - rng.uniform())) * std::cos(6.283185307179586 * rng.uniform());
    };
    t.x.push_back({c + gauss(), c + gauss(), gauss()});
    t.y.push_back(pos ? 1 : 0);
  }
  return t;
}

std::vector<std::size_t> all_of_size(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST_CASE("separable data is fit exactly") {
  const auto t = blobs(1, 80, 4.0);
  for (auto kind : {LossKind::logistic, LossKind::hinge}) {
    const auto m = train(t.x, t.y, kind);
    CHECK(evaluate(predict(m, t.x).labels, t.y).accuracy == 1.0);
    for (std::size_t e = 1; e < m.loss_history.size(); ++e) CHECK(m.loss_history[e] <= m.loss_history[e - 1]);
  }
}

TEST_CASE("gradients match finite differences") {
  const auto t = blobs(2, 30, 1.0);
  const auto z = Standardizer::fit(t.x).apply(t.x);
  const auto batch = all_of_size(t.x.size());
  const std::vector<double> w{0.3, -0.7, 0.2};
  const double b = 0.1, h = 1e-6;
  for (auto kind : {LossKind::logistic, LossKind::hinge}) {
    const auto g = loss_and_gradient(kind, w, b, z, t.y, batch, 0.5);
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto up = w, down = w;
      up[i] += h;
      down[i] -= h;
      const double fd = (loss_and_gradient(kind, up, b, z, t.y, batch, 0.5).loss -
                         loss_and_gradient(kind, down, b, z, t.y, batch, 0.5).loss) / (2 * h);
      CHECK(g.weights[i] == doctest::Approx(fd).epsilon(1e-5));
    }
    const double fdb = (loss_and_gradient(kind, w, b + h, z, t.y, batch, 0.5).loss -
                        loss_and_gradient(kind, w, b - h, z, t.y, batch, 0.5).loss) / (2 * h);
    CHECK(g.bias == doctest::Approx(fdb).epsilon(1e-5));
  }
  // Logistic loss at zero weights is log 2.
  CHECK(loss_and_gradient(LossKind::logistic, std::vector<double>(3, 0.0), 0.0, z, t.y, batch, 0.0).loss ==
        doctest::Approx(std::log(2.0)));
}

TEST_CASE("strong regularization shrinks the weights") {
  const auto t = blobs(3, 60, 1.5);
  TrainOptions heavy;
  heavy.l2 = 1e6;
  const auto small = train(t.x, t.y, LossKind::logistic, heavy);
  const auto normal = train(t.x, t.y, LossKind::logistic);
  double a = 0, b = 0;
  for (double v : small.weights) a += v * v;
  for (double v : normal.weights) b += v * v;
  CHECK(std::sqrt(a) < 1e-3);
  CHECK(std::sqrt(a) < std::sqrt(b));
}

TEST_CASE("prediction uses standardized scores") {
  LinearModel m;
  m.weights = {2.0, -1.0};
  m.bias = 0.5;
  m.standardizer = {{1.0, 0.0}, {2.0, 1.0}};
  const FeatureMatrix x{{1.0, 0.5}, {1.0, 1.0}, {3.0, 0.0}};
  const auto p = predict(m, x);
  CHECK(p.scores[0] == doctest::Approx(0.0));
  CHECK(p.labels == Labels{1, 0, 1});
  auto flipped = m;
  for (auto& w : flipped.weights) w = -w;
  flipped.bias = -m.bias;
  const auto q = predict(flipped, FeatureMatrix{{1.0, 0.0}, {1.0, 1.0}});
  const auto r = predict(m, FeatureMatrix{{1.0, 0.0}, {1.0, 1.0}});
  for (std::size_t i = 0; i < q.labels.size(); ++i) CHECK(q.labels[i] != r.labels[i]);
  CHECK_THROWS_AS(predict(m, FeatureMatrix{{1.0}}), std::invalid_argument);
}

TEST_CASE("training errors") {
  CHECK_THROWS_WITH(train({{1.0}, {2.0}}, Labels{1, 1}, LossKind::hinge), doctest::Contains("degenerate labels"));
  CHECK_THROWS_AS(train({{1.0}, {2.0}}, Labels{1}, LossKind::hinge), std::invalid_argument);
  CHECK_THROWS_AS(loss_kind_from_string("svm"), std::invalid_argument);
}

TEST_CASE("training is bit-identical for a fixed seed and robust to feature scale") {
  const auto t = blobs(5, 100, 0.8);
  TrainOptions o;
  o.seed = 17;
  const auto a = train(t.x, t.y, LossKind::hinge, o), b = train(t.x, t.y, LossKind::hinge, o);
  CHECK(predict(a, t.x).scores == predict(b, t.x).scores);

  auto scaled = t.x;
  for (auto& r : scaled) r[1] = 1000.0 * r[1] + 5.0;
  const auto c = train(scaled, t.y, LossKind::hinge, o);
  const auto pa = predict(a, t.x), pc = predict(c, scaled);
  for (std::size_t i = 0; i < pa.scores.size(); ++i) CHECK(pc.scores[i] == doctest::Approx(pa.scores[i]).epsilon(1e-6));
}

TEST_CASE("model json round trip") {
  const auto t = blobs(6, 40, 1.0);
  const auto m = train(t.x, t.y, LossKind::logistic);
  const auto back = model_from_json(model_to_json(m));
  CHECK(back.kind == m.kind);
  CHECK(back.weights == m.weights);
  CHECK(back.bias == m.bias);
  CHECK(predict(back, t.x).scores == predict(m, t.x).scores);
  CHECK_THROWS_AS(model_from_json("{"), std::invalid_argument);
}

TEST_CASE("majority baseline") {
  Labels y(1000, 0);
  std::fill(y.begin(), y.begin() + 404, 1);
  const auto m = majority_baseline(y);
  CHECK_FALSE(m.label);
  CHECK(evaluate(m.predict(y.size()), y).accuracy == doctest::Approx(0.596));
  CHECK(evaluate(m.predict(y.size()), y).f1 == 0.0);

  Labels z(1000, 0);
  std::fill(z.begin(), z.begin() + 534, 1);
  CHECK(majority_baseline(z).label);
  CHECK(evaluate(majority_baseline(z).predict(z.size()), z).accuracy == doctest::Approx(0.534));
  CHECK_FALSE(majority_baseline(Labels{1, 0}).label);
}

TEST_CASE("evaluation") {
  Labels actual(1000, 0);
  std::fill(actual.begin(), actual.begin() + 123, 1);
  const auto r = evaluate(Labels(1000, 0), actual);
  CHECK(r.accuracy == doctest::Approx(0.877));
  CHECK(r.f1 == 0.0);
  CHECK(r.positive_rate == doctest::Approx(0.123));
  const auto all = evaluate(Labels{0, 0}, Labels{0, 0});
  CHECK(all.accuracy == 1.0);
  CHECK(all.f1 == 0.0);
  const auto mixed = evaluate(Labels{1, 1, 0, 0}, Labels{1, 0, 1, 0});
  CHECK(mixed.f1 == doctest::Approx(0.5));
  CHECK_THROWS(evaluate(Labels{1}, Labels{1, 0}));
}

TEST_CASE("splits") {
  const auto t = split(10, SplitPolicy::parse("time:0.7"));
  CHECK(t.train == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});
  CHECK(t.test == std::vector<std::size_t>{7, 8, 9});
  const auto r = split(10, SplitPolicy::parse("random:0.7", 3));
  CHECK(r.train.size() == 7);
  CHECK(std::is_sorted(r.train.begin(), r.train.end()));
  std::vector<std::size_t> both = r.train;
  both.insert(both.end(), r.test.begin(), r.test.end());
  std::sort(both.begin(), both.end());
  CHECK(both == all_of_size(10));
  CHECK(split(10, SplitPolicy::parse("random:0.7", 3)).train == r.train);
  CHECK(split(3, SplitPolicy::parse("time:0.99")).train.size() == 2);
  CHECK(split(3, SplitPolicy::parse("time:0.01")).train.size() == 1);
  CHECK_THROWS(SplitPolicy::parse("time:1.5"));
  CHECK_THROWS(SplitPolicy::parse("ordered:0.5"));
  CHECK_THROWS(SplitPolicy::parse("time:x"));
  CHECK_THROWS(split(1, SplitPolicy{}));
}

TEST_CASE("texttiling finds a planted junction") {
  // Blocks cycling through disjoint word sets, switching at token 120.
  std::vector<WordId> tokens;
  for (std::size_t i = 0; i < 120; ++i) tokens.push_back(static_cast<WordId>(1 + i % 10));
  for (std::size_t i = 0; i < 120; ++i) tokens.push_back(static_cast<WordId>(11 + i % 10));
  const auto b = texttiling(tokens);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == 120);

  CHECK(texttiling(std::vector<WordId>(30, 1)).empty());
  CHECK(texttiling(std::vector<WordId>(500, 4)).empty());
  CHECK_THROWS(texttiling(tokens, TextTilingOptions{0}));
}

TEST_CASE("texttiling finds more boundaries in sectioned text than in homogeneous text") {
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    std::vector<WordId> flat, planted;
    for (int i = 0; i < 400; ++i) flat.push_back(static_cast<WordId>(1 + rng.below(30)));
    for (int sec = 0; sec < 4; ++sec)
      for (int i = 0; i < 100; ++i) planted.push_back(static_cast<WordId>(1 + 10 * sec + rng.below(10)));
    const auto near = [&](const std::vector<std::size_t>& b) {
      std::size_t hits = 0;
      for (std::size_t junction : {100, 200, 300})
        hits += std::any_of(b.begin(), b.end(), [&](std::size_t x) { return x + 10 >= junction && x <= junction + 10; });
      return hits;
    };
    if (near(texttiling(planted)) > near(texttiling(flat))) ++wins;
  }
  CHECK(wins >= 9);
}

TEST_CASE("summary statistics and undo features") {
  const auto s = summary_statistics(std::vector<double>{4, 1, 3, 2});
  CHECK(s == std::vector<double>{1, 4, 2.5, 2.5});
  CHECK(summary_statistics(std::vector<double>{3, 1, 2})[3] == 2.0);
  CHECK_THROWS(summary_statistics(std::vector<double>{}));

  const Extent e{1.0, 4.0};
  NormFields zero{ScalarField(8, 4, e, 0.0), ScalarField(8, 4, e, 0.0), ScalarField(8, 4, e, 0.0),
                  ScalarField(8, 4, e, 0.0)};
  const std::vector<double> h(8, 0.0), g(4, 0.0);
  const auto f = undo_features(zero, h, g, 2);
  CHECK(f.size() == undo_feature_length);
  CHECK(std::all_of(f.begin(), f.end(), [](double v) { return v == 0.0; }));

  NormFields ones{ScalarField(8, 4, e, 1.0), ScalarField(8, 4, e, 1.0), ScalarField(8, 4, e, 1.0),
                  ScalarField(8, 4, e, 1.0)};
  const auto f1 = undo_features(ones, std::vector<double>(8, 1.0), std::vector<double>{0, 0, 1, 0}, 2);
  CHECK(std::all_of(f1.begin(), f1.end(), [](double v) { return v == 1.0; }));
  CHECK_THROWS_AS(undo_features(ones, h, g, 4), std::out_of_range);
}

TEST_CASE("norm fields are square roots of squared derivative norms") {
  const auto doc = synthesize(SyntheticConfig::three_segment(1)).document;
  const auto f = build_field(doc, FieldMode::normalized, {32, 12}, KernelSpec{0.05, 2.0, 3.0});
  const auto n = compute_norm_fields(f);
  const auto raw = derivative_norm_field(f, DerivativeNorm::d2_time);
  for (std::size_t i = 0; i < raw.size(); ++i)
    CHECK(n.d2_time.values()[i] == doctest::Approx(std::sqrt(raw.values()[i])));
}

TEST_CASE("table formatting") {
  TableRow row;
  row.article = "Synthetic";
  row.revisions = 60;
  row.vocabulary_size = 120;
  row.positive_rate = 0.1234;
  row.a = {0.5, 0.0};
  row.b = {0.75, 0.25};
  row.c = {0.875, 0.5};
  const std::vector<TableRow> rows{row};
  const auto text = format_table(rows);
  CHECK(text.find("Accuracy") != std::string::npos);
  CHECK(text.find("F1 Measure") != std::string::npos);
  CHECK(text.find("0.123") != std::string::npos);
  CHECK(text.find("0.875") != std::string::npos);
  const auto json = table_to_json(rows);
  CHECK(json.find("\"Synthetic\"") != std::string::npos);
}
