#include "mtkit/pipeline/sentence_splitter.hpp"

#include "mtkit/pipeline/masking.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::pipeline {

namespace {

bool is_closing(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U')' || cp == U']' || cp == U'}' || cp == U'»' ||
         cp == U'\u201C' || cp == U'\u201D' || cp == U'\u2019' || cp == U'\u203A';
}

bool is_opening(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U'(' || cp == U'[' || cp == U'{' ||
         cp == U'«' || cp == U'¿' || cp == U'¡' ||
         cp == U'\u201E' || cp == U'\u201C' || cp == U'\u2018' || cp == U'\u2039';
}

bool is_terminal(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == U'…';
}

bool starts_new_sentence(std::string_view word) {
  if (placeholder_length_at(word, 0) > 0) return true;
  std::size_t pos = 0;
  while (pos < word.size()) {
    char32_t cp = unicode::next_code_point(word, pos);
    if (unicode::is_upper(cp)) return true;
    if (!is_opening(cp)) return false;
    // An opening mark followed by anything but a lower-case letter.
    if (pos >= word.size()) return false;
    std::size_t peek = pos;
    char32_t next = unicode::next_code_point(word, peek);
    if (!is_opening(next)) return unicode::is_upper(next) || !unicode::is_letter(next);
  }
  return false;
}

bool starts_with_digit(std::string_view word) {
  return !word.empty() && word[0] >= '0' && word[0] <= '9';
}

// True when `word` ends a sentence given the word that follows it.
bool ends_sentence(std::string_view word, std::string_view next, const PrefixList& prefixes) {
  auto cps = unicode::decode(word);
  std::size_t end = cps.size();
  while (end > 0 && is_closing(cps[end - 1])) --end;
  if (end == 0 || !is_terminal(cps[end - 1])) return false;
  if (!starts_new_sentence(next)) return false;
  if (cps[end - 1] != U'.') return true;
  // A single period: check the word it is attached to.
  if (end >= 2 && cps[end - 2] == U'.') return true;  // ellipsis
  std::size_t start = 0;
  while (start < end - 1 && is_opening(cps[start])) ++start;
  std::u32string stem = cps.substr(start, end - 1 - start);
  if (stem.empty()) return true;
  std::string stem_utf8 = unicode::encode(stem);
  if (prefixes.is_nonbreaking(stem_utf8, starts_with_digit(next))) return false;
  if (stem.size() == 1 && unicode::is_upper(stem[0])) return false;
  return true;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text, const PrefixList& prefixes) {
  std::vector<std::string> sentences;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    auto words = unicode::split_whitespace(text.substr(line_start, line_end - line_start));
    std::string current;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (!current.empty()) current += ' ';
      current.append(words[i]);
      if (i + 1 < words.size() && ends_sentence(words[i], words[i + 1], prefixes)) {
        sentences.push_back(std::move(current));
        current.clear();
      }
    }
    if (!current.empty()) sentences.push_back(std::move(current));
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  return sentences;
}

std::vector<std::string> split_sentences(std::string_view text, Lang lang) {
  return split_sentences(text, PrefixList::builtin(lang));
}

}  // namespace mtkit::pipeline
