#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mtkit/language.hpp"
#include "mtkit/pipeline/resources.hpp"

namespace mtkit::pipeline {

// Rule-based splitting at . ! ? or … (optionally followed by closing quotes
// or brackets) when the next word opens with an upper-case letter, an
// opening quote/bracket or a placeholder. A period after a non-breaking
// prefix or a single upper-case initial does not split. Newlines are hard
// boundaries. Sentences are re-joined from whitespace-separated words with
// single spaces.
std::vector<std::string> split_sentences(std::string_view text, Lang lang);
std::vector<std::string> split_sentences(std::string_view text, const PrefixList& prefixes);

}  // namespace mtkit::pipeline
