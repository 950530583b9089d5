#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vdoc/learn.hpp"
#include "vdoc/rng.hpp"

namespace vdoc {
namespace {

void check_matrix(const FeatureMatrix& x) {
  if (x.empty()) throw std::invalid_argument("empty feature matrix");
  for (const auto& row : x)
    if (row.size() != x.front().size()) throw std::invalid_argument("feature rows differ in length");
}

double dot(std::span<const double> w, std::span<const double> x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i];
  return acc;
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

Standardizer Standardizer::fit(const FeatureMatrix& x) {
  check_matrix(x);
  const std::size_t d = x.front().size();
  const double n = static_cast<double>(x.size());
  Standardizer st;
  st.mean.assign(d, 0.0);
  st.stddev.assign(d, 0.0);
  for (const auto& row : x)
    for (std::size_t i = 0; i < d; ++i) st.mean[i] += row[i];
  for (auto& m : st.mean) m /= n;
  for (const auto& row : x)
    for (std::size_t i = 0; i < d; ++i) st.stddev[i] += (row[i] - st.mean[i]) * (row[i] - st.mean[i]);
  for (auto& s : st.stddev) {
    s = std::sqrt(s / n);
    if (!(s > 0.0)) s = 1.0;
  }
  return st;
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
  if (row.size() != mean.size())
    throw std::invalid_argument("feature dimension " + std::to_string(row.size()) + " does not match model dimension " +
                                std::to_string(mean.size()));
  std::vector<double> out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = (row[i] - mean[i]) / stddev[i];
  return out;
}

FeatureMatrix Standardizer::apply(const FeatureMatrix& x) const {
  FeatureMatrix out;
  out.reserve(x.size());
  for (const auto& row : x) out.push_back(apply(row));
  return out;
}

LossGradient loss_and_gradient(LossKind kind, std::span<const double> weights, double bias,
                               const FeatureMatrix& standardized, std::span<const std::uint8_t> y,
                               std::span<const std::size_t> batch, double l2) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  LossGradient g;
  g.weights.assign(weights.size(), 0.0);
  for (auto i : batch) {
    const auto& x = standardized.at(i);
    if (x.size() != weights.size()) throw std::invalid_argument("feature dimension mismatch");
    const double sign = y[i] ? 1.0 : -1.0;
    const double margin = sign * (dot(weights, x) + bias);
    double dz = 0.0;  // derivative of the loss with respect to the score
    if (kind == LossKind::logistic) {
      g.loss += softplus(-margin);
      dz = -sign / (1.0 + std::exp(margin));
    } else if (margin < 1.0) {
      g.loss += 1.0 - margin;
      dz = -sign;
    }
    if (dz != 0.0) {
      for (std::size_t k = 0; k < x.size(); ++k) g.weights[k] += dz * x[k];
      g.bias += dz;
    }
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  g.loss *= inv;
  g.bias *= inv;
  double norm2 = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    g.weights[k] = g.weights[k] * inv + l2 * weights[k];
    norm2 += weights[k] * weights[k];
  }
  g.loss += 0.5 * l2 * norm2;
  return g;
}

LinearModel train(const FeatureMatrix& x, std::span<const std::uint8_t> y, LossKind kind,
                  const TrainOptions& options) {
  check_matrix(x);
  if (x.size() != y.size()) throw std::invalid_argument("feature rows and labels differ in count");
  if (x.size() < 2) throw std::invalid_argument("need at least 2 training examples");
  std::size_t positives = 0;
  for (auto v : y) positives += v ? 1 : 0;
  if (positives == 0 || positives == y.size()) throw std::invalid_argument("degenerate labels");

  LinearModel model;
  model.kind = kind;
  model.standardizer = Standardizer::fit(x);
  const FeatureMatrix xs = model.standardizer.apply(x);
  const std::size_t n = xs.size();
  model.weights.assign(xs.front().size(), 0.0);
  if (kind == LossKind::logistic) {
    // Start from the prior log-odds so the first epochs fit features, not the base rate.
    const double p = static_cast<double>(positives) / static_cast<double>(n);
    model.bias = std::log(p / (1.0 - p));
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  const std::size_t batch = options.batch_size == 0 ? n : std::min(options.batch_size, n);
  Rng rng(options.seed);
  double current = loss_and_gradient(kind, model.weights, model.bias, xs, y, order, options.l2).loss;
  for (std::size_t e = 0; e < options.epochs; ++e) {
    const double eta = options.learning_rate / (1.0 + static_cast<double>(e));
    if (batch < n) rng.shuffle(std::span<std::size_t>(order));
    std::vector<double> w = model.weights;
    double b = model.bias;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::span<const std::size_t> part(order.data() + start, std::min(batch, n - start));
      const auto g = loss_and_gradient(kind, w, b, xs, y, part, options.l2);
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= eta * g.weights[k];
      b -= eta * g.bias;
    }
    const double loss = loss_and_gradient(kind, w, b, xs, y, order, options.l2).loss;
    if (!options.reject_worse_epochs || loss <= current) {
      model.weights = std::move(w);
      model.bias = b;
      current = loss;
    }
    model.loss_history.push_back(current);
  }
  return model;
}

Prediction predict(const LinearModel& model, const FeatureMatrix& x) {
  Prediction p;
  p.labels.reserve(x.size());
  p.scores.reserve(x.size());
  for (const auto& row : x) {
    const auto z = model.standardizer.apply(row);
    if (z.size() != model.weights.size()) throw std::invalid_argument("feature dimension mismatch");
    const double score = dot(model.weights, z) + model.bias;
    p.scores.push_back(score);
    p.labels.push_back(score >= 0.0 ? 1 : 0);
  }
  return p;
}

std::string model_to_json(const LinearModel& model) {
  nlohmann::json j;
  j["kind"] = to_string(model.kind);
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["mean"] = model.standardizer.mean;
  j["stddev"] = model.standardizer.stddev;
  return j.dump(2) + "\n";
}

LinearModel model_from_json(const std::string& text) {
  LinearModel m;
  try {
    const auto j = nlohmann::json::parse(text);
    m.kind = loss_kind_from_string(j.at("kind").get<std::string>());
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.standardizer.mean = j.at("mean").get<std::vector<double>>();
    m.standardizer.stddev = j.at("stddev").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad model json: ") + e.what());
  }
  if (m.weights.size() != m.standardizer.mean.size() || m.weights.size() != m.standardizer.stddev.size())
    throw std::invalid_argument("bad model json: vector lengths differ");
  return m;
}

MajorityBaseline majority_baseline(std::span<const std::uint8_t> y_train) {
  if (y_train.empty()) throw std::invalid_argument("majority baseline needs training labels");
  std::size_t positives = 0;
  for (auto v : y_train) positives += v ? 1 : 0;
  return MajorityBaseline{2 * positives > y_train.size()};
}

}  // namespace vdoc
