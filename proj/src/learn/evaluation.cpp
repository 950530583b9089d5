#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vdoc/learn.hpp"
#include "vdoc/rng.hpp"

namespace vdoc {

const char* to_string(LossKind kind) { return kind == LossKind::logistic ? "logistic" : "hinge"; }

LossKind loss_kind_from_string(const std::string& text) {
  if (text == "logistic") return LossKind::logistic;
  if (text == "hinge") return LossKind::hinge;
  throw std::invalid_argument("unknown loss '" + text + "' (expected logistic|hinge)");
}

EvalReport evaluate(std::span<const std::uint8_t> predicted, std::span<const std::uint8_t> actual) {
  if (predicted.size() != actual.size()) throw std::invalid_argument("prediction and label counts differ");
  if (actual.empty()) throw std::invalid_argument("nothing to evaluate");
  EvalReport r;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const bool p = predicted[i] != 0, a = actual[i] != 0;
    if (p && a) ++r.tp;
    else if (p) ++r.fp;
    else if (a) ++r.fn;
    else ++r.tn;
  }
  const double n = static_cast<double>(actual.size());
  r.accuracy = static_cast<double>(r.tp + r.tn) / n;
  r.positive_rate = static_cast<double>(r.tp + r.fn) / n;
  const std::size_t denom = 2 * r.tp + r.fp + r.fn;
  r.f1 = denom == 0 ? 0.0 : 2.0 * static_cast<double>(r.tp) / static_cast<double>(denom);
  return r;
}

SplitPolicy SplitPolicy::parse(const std::string& text, std::uint64_t seed) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  SplitPolicy p;
  p.seed = seed;
  if (kind == "random") p.kind = Kind::random;
  else if (kind == "time") p.kind = Kind::time_ordered;
  else throw std::invalid_argument("bad split '" + text + "' (expected random:F or time:F)");
  if (colon != std::string::npos) {
    std::size_t used = 0;
    const std::string num = text.substr(colon + 1);
    try {
      p.fraction = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size()) throw std::invalid_argument("bad split fraction in '" + text + "'");
  }
  if (!(p.fraction > 0.0 && p.fraction < 1.0)) throw std::invalid_argument("split fraction must lie in (0, 1)");
  return p;
}

Split split(std::size_t n, const SplitPolicy& policy) {
  if (n < 2) throw std::invalid_argument("split needs at least 2 items");
  if (!(policy.fraction > 0.0 && policy.fraction < 1.0))
    throw std::invalid_argument("split fraction must lie in (0, 1)");
  auto m = static_cast<std::size_t>(std::llround(policy.fraction * static_cast<double>(n)));
  m = std::clamp<std::size_t>(m, 1, n - 1);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (policy.kind == SplitPolicy::Kind::random) {
    Rng rng(policy.seed);
    rng.shuffle(std::span<std::size_t>(order));
  }
  Split s;
  s.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
  s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(m), order.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

std::string format_table(std::span<const TableRow> rows) {
  std::size_t name = 7;
  for (const auto& r : rows) name = std::max(name, r.article.size());
  const int nw = static_cast<int>(name);
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %9s  %9s  %5s  %-23s  %-23s\n", nw, "", "", "", "", "Accuracy", "F1 Measure");
  out += line;
  std::snprintf(line, sizeof line, "%-*s  %9s  %9s  %5s  %7s %7s %7s  %7s %7s %7s\n", nw, "Article", "Revisions",
                "Voc. Size", "p(y)", "a", "b", "c", "a", "b", "c");
  out += line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-*s  %9zu  %9zu  %5.3f  %7.3f %7.3f %7.3f  %7.3f %7.3f %7.3f\n", nw,
                  r.article.c_str(), r.revisions, r.vocabulary_size, r.positive_rate, r.a.accuracy, r.b.accuracy,
                  r.c.accuracy, r.a.f1, r.b.f1, r.c.f1);
    out += line;
  }
  return out;
}

namespace {
nlohmann::json report_json(const EvalReport& r) {
  return {{"accuracy", r.accuracy}, {"f1", r.f1}, {"positive_rate", r.positive_rate},
          {"tp", r.tp},             {"fp", r.fp}, {"tn", r.tn},
          {"fn", r.fn}};
}
}  // namespace

std::string table_to_json(std::span<const TableRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"article", r.article},
                   {"revisions", r.revisions},
                   {"vocabulary_size", r.vocabulary_size},
                   {"positive_rate", r.positive_rate},
                   {"a", report_json(r.a)},
                   {"b", report_json(r.b)},
                   {"c", report_json(r.c)}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace vdoc
