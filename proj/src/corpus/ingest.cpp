#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vdoc/corpus.hpp"
#include "vdoc/error.hpp"

namespace vdoc {
namespace {

using nlohmann::json;

std::vector<std::string> split_whitespace(const std::string& text) {
  std::istringstream in(text);
  return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

Revision to_revision(const std::string& text, const IngestOptions& options, Vocabulary& vocabulary) {
  const auto tokens = options.pretokenized ? split_whitespace(text) : tokenize(text, options.tokenizer);
  Revision revision;
  revision.reserve(tokens.size());
  for (const auto& t : tokens) revision.push_back(vocabulary.intern(t));
  return revision;
}

RevisionAnnotation read_annotation(const json& record, const std::string& where) {
  RevisionAnnotation a;
  try {
    if (auto it = record.find("boundaries"); it != record.end() && !it->is_null()) {
      std::vector<std::size_t> offsets;
      for (const auto& v : *it) {
        if (!v.is_number_integer() || v.get<long long>() < 0)
          throw ParseError(where, "boundary offsets must be non-negative integers");
        offsets.push_back(v.get<std::size_t>());
      }
      a.boundaries = std::move(offsets);
    }
    if (auto it = record.find("undo"); it != record.end() && !it->is_null()) a.undo = it->get<bool>();
    if (auto it = record.find("author"); it != record.end() && !it->is_null())
      a.author = it->get<std::string>();
    if (auto it = record.find("timestamp"); it != record.end() && !it->is_null())
      a.timestamp = it->get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(where, e.what());
  }
  return a;
}

void check_boundaries(const RevisionAnnotation& a, std::size_t length, const std::string& where) {
  if (!a.boundaries) return;
  const auto& b = *a.boundaries;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] > length)
      throw ParseError(where, "boundary offset " + std::to_string(b[i]) + " exceeds revision length " +
                                  std::to_string(length));
    if (i > 0 && b[i] <= b[i - 1]) throw ParseError(where, "boundary offsets not strictly increasing");
  }
}

json annotation_to_json(const RevisionAnnotation& a) {
  json j = json::object();
  if (a.boundaries) j["boundaries"] = *a.boundaries;
  if (a.undo) j["undo"] = *a.undo;
  if (a.author) j["author"] = *a.author;
  if (a.timestamp) j["timestamp"] = *a.timestamp;
  return j;
}

}  // namespace

VersionedDocument ingest_json_lines(std::istream& in, const IngestOptions& options,
                                    const std::string& source_name) {
  std::vector<Revision> revisions;
  std::vector<RevisionAnnotation> annotations;
  Vocabulary vocabulary;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(where, e.what());
    }
    if (!record.is_object()) throw ParseError(where, "record is not a JSON object");
    auto text = record.find("text");
    if (text == record.end() || !text->is_string()) throw ParseError(where, "missing string field \"text\"");
    auto annotation = read_annotation(record, where);
    // Exported corpora list the vocabulary on their first record so ids survive a round trip.
    if (auto words = record.find("vocabulary"); words != record.end()) {
      if (!words->is_array()) throw ParseError(where, "\"vocabulary\" must be an array of strings");
      for (const auto& w : *words) {
        if (!w.is_string()) throw ParseError(where, "\"vocabulary\" must be an array of strings");
        to_revision(w.get<std::string>(), options, vocabulary);
      }
    }
    auto revision = to_revision(text->get<std::string>(), options, vocabulary);
    check_boundaries(annotation, revision.size(), where);
    revisions.push_back(std::move(revision));
    annotations.push_back(std::move(annotation));
  }
  if (revisions.empty()) throw DataError(source_name + ": no revisions");
  return VersionedDocument(std::move(revisions), std::move(vocabulary), std::move(annotations));
}

VersionedDocument ingest_directory(const std::filesystem::path& dir, const IngestOptions& options) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DataError(dir.string() + ": not a directory");
  constexpr const char* sidecar_name = "annotations.json";
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().filename() != sidecar_name) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  if (files.empty()) throw DataError(dir.string() + ": no revisions");

  json sidecar = json::object();
  if (const auto path = dir / sidecar_name; fs::exists(path)) {
    std::ifstream in(path);
    try {
      sidecar = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ParseError(path.string(), e.what());
    }
    if (!sidecar.is_object()) throw ParseError(path.string(), "expected an object keyed by filename");
  }

  std::vector<Revision> revisions;
  std::vector<RevisionAnnotation> annotations;
  Vocabulary vocabulary;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw DataError(file.string() + ": cannot open");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto name = file.filename().string();
    RevisionAnnotation annotation;
    if (auto it = sidecar.find(name); it != sidecar.end()) {
      annotation = read_annotation(*it, (dir / sidecar_name).string() + "[" + name + "]");
    }
    auto revision = to_revision(text, options, vocabulary);
    check_boundaries(annotation, revision.size(), file.string());
    revisions.push_back(std::move(revision));
    annotations.push_back(std::move(annotation));
  }
  return VersionedDocument(std::move(revisions), std::move(vocabulary), std::move(annotations));
}

VersionedDocument ingest(const std::filesystem::path& path, SourceFormat format, const IngestOptions& options) {
  if (format == SourceFormat::revision_directory) return ingest_directory(path, options);
  std::ifstream in(path);
  if (!in) throw DataError(path.string() + ": cannot open");
  return ingest_json_lines(in, options, path.string());
}

void export_json_lines(const VersionedDocument& doc, std::ostream& out) {
  const auto& vocabulary = doc.vocabulary();
  for (std::size_t j = 0; j < doc.num_revisions(); ++j) {
    std::string text;
    for (auto id : doc.revision(j)) {
      if (!text.empty()) text.push_back(' ');
      text += vocabulary.word(id);
    }
    json record = annotation_to_json(doc.annotation(j));
    record["text"] = std::move(text);
    if (j == 0) record["vocabulary"] = vocabulary.words();
    out << record.dump() << '\n';
  }
}

}  // namespace vdoc
