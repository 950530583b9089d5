#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vdoc/corpus.hpp"
#include "vdoc/rng.hpp"

namespace vdoc {
namespace {

// Bernoulli(p) for word 1 from one uniform draw. The less likely outcome
// fires when u < min(p, 1 - p), so flipping p to 1 - p swaps ids 1 and 2
// draw for draw (except at p = 0.5).
WordId draw_bernoulli_word(Rng& rng, double p, std::size_t vocabulary_size) {
  const double u = rng.uniform();
  bool first;
  if (p <= 0.5) {
    first = u < p;
  } else {
    first = !(u < 1.0 - p);
  }
  if (first) return 1;
  if (vocabulary_size <= 2) return 2;
  return static_cast<WordId>(2 + rng.below(vocabulary_size - 1));
}

std::size_t segment_length(const SegmentSpec& segment, std::size_t version) {
  const double length = segment.initial_length + static_cast<double>(version) * segment.growth_rate;
  return length <= 0.0 ? 0 : static_cast<std::size_t>(std::llround(length));
}

Vocabulary synthetic_vocabulary(std::size_t size) { return Vocabulary(synthetic_words(size)); }

std::string base26(std::size_t n) {
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('a' + n % 26));
    n /= 26;
  } while (n-- > 0);
  return s;
}

WordId draw_section_word(Rng& rng, const SectionedConfig& c, std::size_t section) {
  if (c.background_words > 0 && rng.uniform() < c.background_rate) {
    return static_cast<WordId>(1 + rng.below(c.background_words));
  }
  const auto first = c.background_words + section * c.words_per_topic;
  return static_cast<WordId>(1 + first + rng.below(c.words_per_topic));
}

void flatten(const std::vector<Revision>& sections, Revision& tokens, std::vector<std::uint32_t>& labels,
             std::vector<std::size_t>& boundaries) {
  tokens.clear();
  labels.clear();
  boundaries.clear();
  for (std::size_t k = 0; k < sections.size(); ++k) {
    if (k > 0 && !tokens.empty() && (boundaries.empty() || boundaries.back() < tokens.size()))
      boundaries.push_back(tokens.size());
    tokens.insert(tokens.end(), sections[k].begin(), sections[k].end());
    labels.insert(labels.end(), sections[k].size(), static_cast<std::uint32_t>(k));
  }
  if (!boundaries.empty() && boundaries.back() >= tokens.size()) boundaries.pop_back();
}

void apply_edit(Rng& rng, const SectionedConfig& c, std::vector<Revision>& sections) {
  const auto k = static_cast<std::size_t>(rng.below(sections.size()));
  auto& section = sections[k];
  const auto length = static_cast<std::size_t>(1 + rng.below(std::max<std::size_t>(c.max_edit_length, 1)));
  const bool insert = rng.uniform() < 0.6 || section.size() <= length + 10;
  if (insert) {
    const auto pos = static_cast<std::size_t>(rng.below(section.size() + 1));
    Revision run;
    for (std::size_t i = 0; i < length; ++i) run.push_back(draw_section_word(rng, c, k));
    section.insert(section.begin() + static_cast<std::ptrdiff_t>(pos), run.begin(), run.end());
  } else {
    const auto pos = static_cast<std::size_t>(rng.below(section.size() - length + 1));
    section.erase(section.begin() + static_cast<std::ptrdiff_t>(pos),
                  section.begin() + static_cast<std::ptrdiff_t>(pos + length));
  }
}

std::size_t edits_this_version(Rng& rng, double rate) {
  const double whole = std::floor(rate);
  return static_cast<std::size_t>(whole) + (rng.uniform() < rate - whole ? 1 : 0);
}

void validate(const SectionedConfig& c) {
  if (c.num_sections == 0 || c.words_per_topic == 0 || c.num_versions == 0)
    throw std::invalid_argument("sectioned config needs sections, topic words and versions");
  if (c.background_rate < 0.0 || c.background_rate > 1.0)
    throw std::invalid_argument("background_rate must lie in [0, 1]");
}

}  // namespace

std::vector<std::string> synthetic_words(std::size_t count) {
  std::vector<std::string> words;
  words.reserve(count);
  for (std::size_t n = 0; words.size() < count; ++n) {
    std::string candidate = "w" + base26(n);
    const auto tokens = tokenize(candidate);
    if (tokens.size() == 1 && tokens.front() == candidate) words.push_back(std::move(candidate));
  }
  return words;
}

SyntheticConfig SyntheticConfig::three_segment(std::uint64_t seed) {
  SyntheticConfig c;
  c.segments = {{0.3, 30.0, 2.0}, {0.7, 40.0, 0.0}, {0.5, 120.0, -1.0}};
  c.num_versions = 60;
  c.vocabulary_size = 2;
  c.seed = seed;
  return c;
}

SyntheticCorpus synthesize(const SyntheticConfig& config) {
  if (config.segments.empty()) throw std::invalid_argument("synthetic config needs at least one segment");
  if (config.num_versions == 0) throw std::invalid_argument("synthetic config needs at least one version");
  if (config.vocabulary_size < 2) throw std::invalid_argument("synthetic vocabulary needs at least 2 words");
  for (const auto& s : config.segments) {
    if (!(s.probability >= 0.0 && s.probability <= 1.0))
      throw std::invalid_argument("segment probability must lie in [0, 1]");
    if (s.initial_length < 0.0) throw std::invalid_argument("segment initial length must be non-negative");
  }

  Rng rng(config.seed);
  std::vector<Revision> revisions;
  std::vector<RevisionAnnotation> annotations;
  std::vector<std::vector<std::uint32_t>> labels;
  for (std::size_t j = 0; j < config.num_versions; ++j) {
    Revision tokens;
    std::vector<std::uint32_t> segment_of;
    std::vector<std::size_t> boundaries;
    for (std::size_t k = 0; k < config.segments.size(); ++k) {
      const auto n = segment_length(config.segments[k], j);
      if (k > 0 && !tokens.empty() && n > 0 && (boundaries.empty() || boundaries.back() < tokens.size()))
        boundaries.push_back(tokens.size());
      for (std::size_t i = 0; i < n; ++i) {
        tokens.push_back(draw_bernoulli_word(rng, config.segments[k].probability, config.vocabulary_size));
        segment_of.push_back(static_cast<std::uint32_t>(k));
      }
    }
    RevisionAnnotation a;
    a.boundaries = std::move(boundaries);
    revisions.push_back(std::move(tokens));
    annotations.push_back(std::move(a));
    labels.push_back(std::move(segment_of));
  }
  return {VersionedDocument(std::move(revisions), synthetic_vocabulary(config.vocabulary_size),
                            std::move(annotations)),
          std::move(labels)};
}

SyntheticCorpus synthesize_sectioned(const SectionedConfig& config) {
  validate(config);
  Rng rng(config.seed);
  std::vector<Revision> sections(config.num_sections);
  for (std::size_t k = 0; k < config.num_sections; ++k) {
    const auto jitter = config.initial_section_length / 2;
    const auto n = config.initial_section_length - jitter + rng.below(2 * jitter + 1);
    for (std::size_t i = 0; i < n; ++i) sections[k].push_back(draw_section_word(rng, config, k));
  }

  std::vector<Revision> revisions;
  std::vector<RevisionAnnotation> annotations;
  std::vector<std::vector<std::uint32_t>> labels;
  for (std::size_t j = 0; j < config.num_versions; ++j) {
    if (j > 0) {
      const auto n = edits_this_version(rng, config.edit_rate);
      for (std::size_t e = 0; e < n; ++e) apply_edit(rng, config, sections);
    }
    Revision tokens;
    std::vector<std::uint32_t> segment_of;
    std::vector<std::size_t> boundaries;
    flatten(sections, tokens, segment_of, boundaries);
    RevisionAnnotation a;
    a.boundaries = std::move(boundaries);
    revisions.push_back(std::move(tokens));
    annotations.push_back(std::move(a));
    labels.push_back(std::move(segment_of));
  }
  const auto v = config.background_words + config.num_sections * config.words_per_topic;
  return {VersionedDocument(std::move(revisions), synthetic_vocabulary(v), std::move(annotations)),
          std::move(labels)};
}

SyntheticCorpus synthesize_with_undo(const UndoConfig& config) {
  const auto& c = config.base;
  validate(c);
  if (!(config.scramble_rate >= 0.0 && config.scramble_rate < 0.5))
    throw std::invalid_argument("scramble_rate must lie in [0, 0.5)");
  Rng rng(c.seed);
  std::vector<Revision> sections(c.num_sections);
  for (std::size_t k = 0; k < c.num_sections; ++k) {
    const auto jitter = c.initial_section_length / 2;
    const auto n = c.initial_section_length - jitter + rng.below(2 * jitter + 1);
    for (std::size_t i = 0; i < n; ++i) sections[k].push_back(draw_section_word(rng, c, k));
  }

  // A scramble occupies its slot and forces a revert in the next one, so
  // scrambles are started with probability q / (1 - q) among free slots to
  // make q the overall scramble fraction.
  const double start_probability = config.scramble_rate / (1.0 - config.scramble_rate);
  std::vector<Revision> revisions;
  std::vector<RevisionAnnotation> annotations;
  std::vector<std::vector<std::uint32_t>> labels;
  bool reverting = false;
  for (std::size_t j = 0; j < c.num_versions; ++j) {
    Revision tokens;
    std::vector<std::uint32_t> segment_of;
    std::vector<std::size_t> boundaries;
    RevisionAnnotation a;
    if (reverting) {
      // Restore the pre-scramble content unchanged.
      flatten(sections, tokens, segment_of, boundaries);
      a.undo = true;
      reverting = false;
    } else if (j > 0 && j + 1 < c.num_versions && rng.uniform() < start_probability) {
      flatten(sections, tokens, segment_of, boundaries);
      std::vector<std::size_t> order(tokens.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      rng.shuffle(std::span<std::size_t>(order));
      Revision scrambled(tokens.size());
      std::vector<std::uint32_t> scrambled_labels(tokens.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        scrambled[i] = tokens[order[i]];
        scrambled_labels[i] = segment_of[order[i]];
      }
      tokens = std::move(scrambled);
      segment_of = std::move(scrambled_labels);
      boundaries.clear();
      a.undo = false;
      reverting = true;
    } else {
      if (j > 0) {
        const auto n = edits_this_version(rng, c.edit_rate);
        for (std::size_t e = 0; e < n; ++e) apply_edit(rng, c, sections);
      }
      flatten(sections, tokens, segment_of, boundaries);
      a.undo = false;
    }
    a.boundaries = std::move(boundaries);
    revisions.push_back(std::move(tokens));
    annotations.push_back(std::move(a));
    labels.push_back(std::move(segment_of));
  }
  const auto v = c.background_words + c.num_sections * c.words_per_topic;
  return {VersionedDocument(std::move(revisions), synthetic_vocabulary(v), std::move(annotations)),
          std::move(labels)};
}

}  // namespace vdoc
