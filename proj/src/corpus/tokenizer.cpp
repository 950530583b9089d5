#include <string>
#include <string_view>
#include <vector>

#include "vdoc/corpus.hpp"

namespace vdoc {
namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::string strip_tags(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_tag = false;
  for (char c : text) {
    if (in_tag) {
      if (c == '>') {
        in_tag = false;
        out.push_back(' ');
      }
    } else if (c == '<') {
      in_tag = true;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options) {
  std::string stripped;
  if (options.strip_tags) {
    stripped = strip_tags(text);
    text = stripped;
  }
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    if (!(options.remove_stopwords && is_stopword(current))) {
      tokens.push_back(options.stem ? porter_stem(current) : current);
    }
    current.clear();
  };
  for (char c : text) {
    if (is_alpha(c)) {
      current.push_back(lower(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

}  // namespace vdoc
