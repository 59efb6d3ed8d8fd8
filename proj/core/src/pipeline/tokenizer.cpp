#include "mtkit/pipeline/tokenizer.hpp"

#include "mtkit/unicode.hpp"

namespace mtkit::pipeline {

namespace {

bool is_split_char(char32_t cp) {
  switch (cp) {
    case U'.': case U',': case U';': case U':': case U'!': case U'?':
    case U'(': case U')': case U'[': case U']': case U'{': case U'}':
    case U'"': case U'\'': case U'«': case U'»': case U'¿': case U'¡': case U'…':
      return true;
    default:
      return false;
  }
}

bool is_terminal(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == U'…';
}

bool is_digit_ascii(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

class ChunkTokenizer {
 public:
  ChunkTokenizer(Lang lang, const PrefixList& prefixes, TokenizedSentence& out)
      : lang_(lang), prefixes_(prefixes), out_(out) {}

  void run(std::string_view chunk, bool next_starts_with_digit) {
    first_in_chunk_ = true;
    const std::u32string cps = unicode::decode(chunk);
    const std::size_t n = cps.size();
    // Byte offsets of every code point, for placeholder detection.
    std::vector<std::size_t> offsets(n + 1, chunk.size());
    {
      std::size_t pos = 0;
      for (std::size_t i = 0; i < n; ++i) {
        offsets[i] = pos;
        unicode::next_code_point(chunk, pos);
      }
    }
    std::size_t i = 0;
    while (i < n) {
      char32_t cp = cps[i];
      char32_t prev = i > 0 ? cps[i - 1] : 0;
      char32_t next = i + 1 < n ? cps[i + 1] : 0;

      if (std::size_t len = placeholder_length_at(chunk, offsets[i]); len > 0) {
        flush();
        emit(std::string(chunk.substr(offsets[i], len)));
        std::size_t end = offsets[i] + len;
        while (i < n && offsets[i] < end) ++i;
        continue;
      }
      if (!is_split_char(cp)) {
        word_ += unicode::encode(cp);
        ++i;
        continue;
      }
      if (cp == U'.' && unicode::is_alnum(prev) && unicode::is_alnum(next) && !word_.empty()) {
        word_ += '.';
        ++i;
        continue;
      }
      if ((cp == U',' || cp == U':') && is_digit_ascii(prev) && is_digit_ascii(next) &&
          !word_.empty()) {
        word_ += unicode::encode(cp);
        ++i;
        continue;
      }
      if (cp == U'\'' && unicode::is_letter(prev) && unicode::is_letter(next) && !word_.empty()) {
        if (lang_ == Lang::en) {
          flush();
          word_ = "'";
        } else if (lang_ == Lang::fr || lang_ == Lang::it) {
          word_ += '\'';
          flush();
        } else {
          word_ += '\'';
        }
        ++i;
        continue;
      }
      if (is_terminal(cp)) {
        std::size_t j = i;
        while (j < n && is_terminal(cps[j])) ++j;
        bool last_in_chunk = j == n;
        if (cp == U'.' && j == i + 1 && !word_.empty() &&
            (prefixes_.is_nonbreaking(word_, last_in_chunk && next_starts_with_digit) ||
             is_initial(word_))) {
          word_ += '.';
          flush();
          i = j;
          continue;
        }
        flush();
        emit(unicode::encode(std::u32string_view(cps).substr(i, j - i)));
        i = j;
        continue;
      }
      flush();
      emit(unicode::encode(cp));
      ++i;
    }
    flush();
  }

 private:
  static bool is_initial(const std::string& word) {
    auto cps = unicode::decode(word);
    return cps.size() == 1 && unicode::is_upper(cps[0]);
  }

  void flush() {
    if (!word_.empty()) emit(std::move(word_));
    word_.clear();
  }

  void emit(std::string token) {
    out_.space_before.push_back(first_in_chunk_ && !out_.tokens.empty());
    out_.tokens.push_back(std::move(token));
    first_in_chunk_ = false;
  }

  Lang lang_;
  const PrefixList& prefixes_;
  TokenizedSentence& out_;
  std::string word_;
  bool first_in_chunk_ = true;
};

bool all_in(std::string_view token, std::u32string_view set) {
  if (token.empty()) return false;
  std::size_t pos = 0;
  while (pos < token.size()) {
    if (set.find(unicode::next_code_point(token, pos)) == std::u32string_view::npos) return false;
  }
  return true;
}

bool is_clitic(std::string_view token) {
  return token.size() > 1 && token[0] == '\'' && unicode::has_letter(token.substr(1)) &&
         token.find('\'', 1) == std::string_view::npos;
}

bool is_elision(std::string_view token) {
  return token.size() > 1 && token.back() == '\'' &&
         unicode::has_letter(token.substr(0, token.size() - 1));
}

}  // namespace

TokenizedSentence tokenize_with_spacing(std::string_view sentence, Lang lang,
                                        const PrefixList& prefixes) {
  TokenizedSentence out;
  ChunkTokenizer tokenizer(lang, prefixes, out);
  auto chunks = unicode::split_whitespace(sentence);
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    bool next_digit = c + 1 < chunks.size() && !chunks[c + 1].empty() &&
                      chunks[c + 1][0] >= '0' && chunks[c + 1][0] <= '9';
    tokenizer.run(chunks[c], next_digit);
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence, Lang lang) {
  return tokenize_with_spacing(sentence, lang, PrefixList::builtin(lang)).tokens;
}

std::string detokenize(const std::vector<std::string>& tokens, Lang lang,
                       const PlaceholderMap* placeholders) {
  const bool french = lang == Lang::fr;
  const std::u32string_view attach_left = french ? U".,)]}…" : U".,;:!?)]}…»";
  const std::u32string_view attach_right = french ? U"([{¿¡" : U"([{¿¡«";

  std::string out;
  bool double_open = false;
  bool single_open = false;
  bool previous_attaches_right = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    bool left = false;
    bool right = false;
    if (tok == "\"") {
      (double_open ? left : right) = true;
      double_open = !double_open;
    } else if (tok == "'") {
      (single_open ? left : right) = true;
      single_open = !single_open;
    } else if (all_in(tok, attach_left) || is_clitic(tok)) {
      left = true;
    } else if (all_in(tok, attach_right) || is_elision(tok)) {
      right = true;
    } else if (placeholders && is_placeholder(tok)) {
      if (const auto* ph = placeholders->find(tok)) {
        left = ph->glued_left;
        right = ph->glued_right;
      }
    }
    if (i > 0 && !left && !previous_attaches_right) out += ' ';
    out += tok;
    previous_attaches_right = right;
  }
  return out;
}

std::string join_with_spacing(const TokenizedSentence& sentence) {
  std::string out;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (i > 0 && sentence.space_before[i]) out += ' ';
    out += sentence.tokens[i];
  }
  return out;
}

}  // namespace mtkit::pipeline
