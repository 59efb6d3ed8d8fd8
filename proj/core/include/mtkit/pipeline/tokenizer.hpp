#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mtkit/language.hpp"
#include "mtkit/pipeline/masking.hpp"
#include "mtkit/pipeline/resources.hpp"

namespace mtkit::pipeline {

struct TokenizedSentence {
  std::vector<std::string> tokens;
  // space_before[i]: token i was preceded by a space in the input.
  std::vector<bool> space_before;
};

// Separates . , ; : ! ? ( ) [ ] { } " ' « » ¿ ¡ … from words. Kept inside a
// word: periods between alphanumerics, commas and colons between digits,
// non-breaking prefixes with their period ("Dr."), and placeholders as
// atomic tokens. Apostrophes between letters: EN splits before ("don 't"),
// FR/IT split after ("l' amico"), DE/ES keep the word whole.
TokenizedSentence tokenize_with_spacing(std::string_view sentence, Lang lang,
                                        const PrefixList& prefixes);
std::vector<std::string> tokenize(std::string_view sentence, Lang lang);

// Rule-based inverse of tokenize for conventionally spaced text: closing
// punctuation attaches left, opening punctuation and elisions attach right,
// straight quotes alternate between opening and closing. French puts a space
// before ; : ! ? and inside guillemets. Placeholders glued in the masked
// source stay glued when `placeholders` is given.
std::string detokenize(const std::vector<std::string>& tokens, Lang lang,
                       const PlaceholderMap* placeholders = nullptr);

// Exact reconstruction from recorded spacing.
std::string join_with_spacing(const TokenizedSentence& sentence);

}  // namespace mtkit::pipeline
