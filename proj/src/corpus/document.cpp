#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "vdoc/corpus.hpp"
#include "vdoc/error.hpp"

namespace vdoc {

Vocabulary::Vocabulary(std::vector<std::string> words) {
  for (auto& w : words) {
    if (find(w)) throw DataError("duplicate vocabulary word '" + w + "'");
    intern(w);
  }
}

WordId Vocabulary::intern(std::string_view word) {
  std::string key(word);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  words_.push_back(key);
  const auto id = static_cast<WordId>(words_.size());
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<WordId> Vocabulary::find(std::string_view word) const {
  if (auto it = index_.find(std::string(word)); it != index_.end()) return it->second;
  return std::nullopt;
}

const std::string& Vocabulary::word(WordId id) const {
  if (id == 0 || id > words_.size()) throw std::out_of_range("word id " + std::to_string(id));
  return words_[id - 1];
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (const auto& w : words_) {
    for (unsigned char c : w) mix(c);
    mix('\n');
  }
  return h;
}

VersionedDocument::VersionedDocument(std::vector<Revision> revisions, Vocabulary vocabulary,
                                     std::vector<RevisionAnnotation> annotations)
    : revisions_(std::move(revisions)),
      vocabulary_(std::move(vocabulary)),
      annotations_(std::move(annotations)) {
  if (revisions_.empty()) throw DataError("no revisions");
  if (annotations_.empty()) annotations_.resize(revisions_.size());
  if (annotations_.size() != revisions_.size())
    throw DataError("annotation count " + std::to_string(annotations_.size()) +
                    " does not match revision count " + std::to_string(revisions_.size()));
  const auto v = vocabulary_.size();
  for (std::size_t j = 0; j < revisions_.size(); ++j) {
    for (auto id : revisions_[j]) {
      if (id == 0 || id > v)
        throw DataError("revision " + std::to_string(j) + ": token id " + std::to_string(id) +
                        " outside vocabulary of size " + std::to_string(v));
    }
    if (const auto& b = annotations_[j].boundaries) {
      for (std::size_t i = 0; i < b->size(); ++i) {
        if ((*b)[i] > revisions_[j].size())
          throw DataError("revision " + std::to_string(j) + ": boundary offset " +
                          std::to_string((*b)[i]) + " exceeds length " +
                          std::to_string(revisions_[j].size()));
        if (i > 0 && (*b)[i] <= (*b)[i - 1])
          throw DataError("revision " + std::to_string(j) + ": boundary offsets not strictly increasing");
      }
    }
  }
}

std::size_t VersionedDocument::max_length() const {
  std::size_t n = 0;
  for (const auto& r : revisions_) n = std::max(n, r.size());
  return n;
}

std::size_t VersionedDocument::total_tokens() const {
  return std::accumulate(revisions_.begin(), revisions_.end(), std::size_t{0},
                         [](std::size_t acc, const Revision& r) { return acc + r.size(); });
}

bool VersionedDocument::has_boundaries() const {
  for (const auto& a : annotations_)
    if (a.boundaries) return true;
  return false;
}

bool VersionedDocument::has_undo_flags() const {
  for (const auto& a : annotations_)
    if (a.undo) return true;
  return false;
}

}  // namespace vdoc
