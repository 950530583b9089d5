// Porter's 1980 suffix-stripping rules, without the later departures of the
// reference C release (no LOGI/BLI rules in step 2). Words of one or two
// letters are returned unchanged.

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "vdoc/corpus.hpp"

namespace vdoc {
namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word) {}

  std::string run() {
    if (b_.size() <= 2) return b_;
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return b_;
  }

 private:
  // Consonant test on b_[i] using the letters before it.
  bool consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 || !consonant(i - 1);
      default:
        return true;
    }
  }

  // m() of the first `len` letters: number of VC sequences.
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i)
      if (!consonant(i)) return true;
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && consonant(len - 1);
  }

  // *o: stem ends cvc with the final c not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) return false;
    const char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view suffix) const {
    return b_.size() >= suffix.size() &&
           std::string_view(b_).substr(b_.size() - suffix.size()) == suffix;
  }

  std::size_t stem_length(std::string_view suffix) const { return b_.size() - suffix.size(); }

  void replace_suffix(std::string_view suffix, std::string_view with) {
    b_.resize(stem_length(suffix));
    b_.append(with);
  }

  using Rule = std::pair<std::string_view, std::string_view>;

  // Applies the longest matching rule if its stem has m > min_measure.
  // A matching rule whose condition fails ends the step.
  template <std::size_t N>
  void apply_rules(const std::array<Rule, N>& rules, int min_measure) {
    const Rule* best = nullptr;
    for (const auto& rule : rules) {
      if (ends(rule.first) && (best == nullptr || rule.first.size() > best->first.size())) best = &rule;
    }
    if (best != nullptr && measure(stem_length(best->first)) > min_measure)
      replace_suffix(best->first, best->second);
  }

  void step1a() {
    if (ends("sses")) {
      replace_suffix("sses", "ss");
    } else if (ends("ies")) {
      replace_suffix("ies", "i");
    } else if (ends("ss")) {
      // unchanged
    } else if (ends("s")) {
      replace_suffix("s", "");
    }
  }

  void step1b() {
    if (ends("eed")) {
      if (measure(stem_length("eed")) > 0) replace_suffix("eed", "ee");
      return;
    }
    std::string_view removed;
    if (ends("ed") && has_vowel(stem_length("ed"))) {
      removed = "ed";
    } else if (ends("ing") && has_vowel(stem_length("ing"))) {
      removed = "ing";
    } else {
      return;
    }
    replace_suffix(removed, "");
    if (ends("at") || ends("bl") || ends("iz")) {
      b_.push_back('e');
    } else if (double_consonant(b_.size())) {
      const char c = b_.back();
      if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
    } else if (measure(b_.size()) == 1 && cvc(b_.size())) {
      b_.push_back('e');
    }
  }

  void step1c() {
    if (ends("y") && has_vowel(stem_length("y"))) b_.back() = 'i';
  }

  void step2() {
    static constexpr std::array<Rule, 20> rules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
        {"izer", "ize"},     {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
        {"eli", "e"},        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},     {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"},  {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    }};
    apply_rules(rules, 0);
  }

  void step3() {
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    apply_rules(rules, 0);
  }

  void step4() {
    static constexpr std::array<std::string_view, 19> suffixes{
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
        "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize",
    };
    std::string_view best;
    for (auto suffix : suffixes) {
      if (ends(suffix) && suffix.size() > best.size()) best = suffix;
    }
    if (best.empty()) return;
    const std::size_t len = stem_length(best);
    if (measure(len) <= 1) return;
    if (best == "ion" && !(len > 0 && (b_[len - 1] == 's' || b_[len - 1] == 't'))) return;
    b_.resize(len);
  }

  void step5a() {
    if (!ends("e")) return;
    const std::size_t len = stem_length("e");
    const int m = measure(len);
    if (m > 1 || (m == 1 && !cvc(len))) b_.pop_back();
  }

  void step5b() {
    if (measure(b_.size()) > 1 && double_consonant(b_.size()) && b_.back() == 'l') b_.pop_back();
  }

  std::string b_;
};

}  // namespace

std::string porter_stem(std::string_view word) { return Stemmer(word).run(); }

}  // namespace vdoc
