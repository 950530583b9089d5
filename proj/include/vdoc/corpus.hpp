#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vdoc/sparse.hpp"

namespace vdoc {

/// Distinct words with contiguous 1-based ids in insertion order.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> words);

  /// Returns the id of `word`, inserting it if new.
  WordId intern(std::string_view word);
  std::optional<WordId> find(std::string_view word) const;
  const std::string& word(WordId id) const;

  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }

  /// FNV-1a over the newline-joined word list; identifies a vocabulary in
  /// serialized fields.
  std::uint64_t hash() const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.words_ == b.words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> index_;
};

struct RevisionAnnotation {
  std::optional<std::vector<std::size_t>> boundaries;  // token offsets, strictly increasing, <= N(j)
  std::optional<bool> undo;
  std::optional<std::string> author;
  std::optional<std::string> timestamp;

  friend bool operator==(const RevisionAnnotation&, const RevisionAnnotation&) = default;
};

using Revision = std::vector<WordId>;

/// Ordered revisions of one document over a shared vocabulary. Immutable.
class VersionedDocument {
 public:
  /// Validates every invariant; throws DataError on violation.
  VersionedDocument(std::vector<Revision> revisions, Vocabulary vocabulary,
                    std::vector<RevisionAnnotation> annotations = {});

  std::size_t num_revisions() const { return revisions_.size(); }
  const Revision& revision(std::size_t j) const { return revisions_.at(j); }
  const std::vector<Revision>& revisions() const { return revisions_; }
  std::size_t length(std::size_t j) const { return revisions_.at(j).size(); }
  std::size_t max_length() const;
  std::size_t total_tokens() const;

  const Vocabulary& vocabulary() const { return vocabulary_; }
  std::size_t vocabulary_size() const { return vocabulary_.size(); }

  /// One entry per revision (default-constructed when the source had none).
  const std::vector<RevisionAnnotation>& annotations() const { return annotations_; }
  const RevisionAnnotation& annotation(std::size_t j) const { return annotations_.at(j); }
  bool has_boundaries() const;
  bool has_undo_flags() const;

  friend bool operator==(const VersionedDocument&, const VersionedDocument&) = default;

 private:
  std::vector<Revision> revisions_;
  Vocabulary vocabulary_;
  std::vector<RevisionAnnotation> annotations_;
};

// ---------------------------------------------------------------------------
// Tokenization

struct TokenizerOptions {
  bool remove_stopwords = true;
  bool stem = true;
  /// Drop <...> spans before tokenizing. Not an HTML parser.
  bool strip_tags = false;
};

/// Lowercased maximal ASCII-alphabetic runs, stopwords removed, Porter-stemmed.
std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options = {});

/// Removes every `<...>` span. An unterminated `<` drops the rest of the text.
std::string strip_tags(std::string_view text);

/// Classic Porter (1980) stemmer. Input is expected lowercase a-z.
std::string porter_stem(std::string_view word);

bool is_stopword(std::string_view word);
std::span<const std::string_view> stopword_list();

// ---------------------------------------------------------------------------
// Ingestion

enum class SourceFormat { json_lines, revision_directory };

struct IngestOptions {
  TokenizerOptions tokenizer;
  /// Split text on whitespace and keep tokens verbatim (for re-reading exports).
  bool pretokenized = false;
};

/// Boundary offsets in a source are token offsets after tokenization.
VersionedDocument ingest_json_lines(std::istream& in, const IngestOptions& options = {},
                                    const std::string& source_name = "<stream>");
VersionedDocument ingest_directory(const std::filesystem::path& dir, const IngestOptions& options = {});
VersionedDocument ingest(const std::filesystem::path& path, SourceFormat format,
                         const IngestOptions& options = {});

/// Writes json-lines with each revision's tokens space-joined as "text"; the
/// first record also carries the ordered "vocabulary".
/// ingest_json_lines(..., pretokenized) reproduces the document exactly.
void export_json_lines(const VersionedDocument& doc, std::ostream& out);

// ---------------------------------------------------------------------------
// Synthetic corpora

struct SegmentSpec {
  double probability;      // P(token id 1)
  double initial_length;   // words in version 0
  double growth_rate;      // words per version
};

struct SyntheticConfig {
  std::vector<SegmentSpec> segments;
  std::size_t num_versions = 60;
  std::size_t vocabulary_size = 2;
  std::uint64_t seed = 0;

  /// Three Bernoulli segments (0.3, 0.7, 0.5) of 30, 40 and 120 words; the
  /// first grows 2 words per version, the last shrinks at half that rate.
  static SyntheticConfig three_segment(std::uint64_t seed = 0);
};

/// A generated document with the index of the planted segment of every token.
struct SyntheticCorpus {
  VersionedDocument document;
  std::vector<std::vector<std::uint32_t>> segment_labels;  // [revision][token]
};

/// Segment k of version j has max(0, round(initial + j * growth)) tokens.
/// Word 1 is drawn with the segment's probability; other outcomes are uniform
/// over words 2..V. Boundary annotations mark the internal segment junctions.
SyntheticCorpus synthesize(const SyntheticConfig& config);

/// Multi-section corpus with topical vocabularies and local revision events.
struct SectionedConfig {
  std::size_t num_sections = 6;
  std::size_t words_per_topic = 40;     // topic-specific words per section
  std::size_t background_words = 20;    // shared by all sections
  double background_rate = 0.2;         // probability of a background token
  std::size_t initial_section_length = 120;
  std::size_t num_versions = 60;
  double edit_rate = 0.5;               // expected edit events per version
  std::size_t max_edit_length = 25;     // inserted/deleted tokens per event
  std::uint64_t seed = 0;
};

/// Revision j+1 derives from revision j by inserting or deleting a short run
/// of tokens inside one section. Boundary annotations are section starts.
SyntheticCorpus synthesize_sectioned(const SectionedConfig& config);

struct UndoConfig {
  SectionedConfig base;
  double scramble_rate = 0.15;  // fraction of revisions that are scrambles
};

/// Sectioned corpus where a fraction of revisions are random permutations of
/// the preceding revision's tokens; the following revision restores the
/// content and carries the UNDO flag.
SyntheticCorpus synthesize_with_undo(const UndoConfig& config);

/// Words w = 1..count that survive tokenize() unchanged, so synthetic corpora
/// written as text re-ingest to the same ids.
std::vector<std::string> synthetic_words(std::size_t count);

}  // namespace vdoc
