#pragma once

#include <string>
#include <string_view>

#include "mtkit/language.hpp"
#include "mtkit/pipeline/resources.hpp"

namespace mtkit::pipeline {

// NFC composition, the substitution table (typographic quotes and dashes to
// ASCII, exotic spaces to U+0020, invisible format characters removed), and
// whitespace canonicalization: "\r\n" and "\r" become "\n", runs of spaces
// collapse to one, and every line is trimmed. Idempotent.
std::string normalize_chars(std::string_view text, Lang lang,
                            const NormalizationTable& table = NormalizationTable::builtin());

}  // namespace mtkit::pipeline
