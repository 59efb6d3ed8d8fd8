#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace mtkit {

enum class Lang { en, fr, de, it, es };

inline constexpr std::array<Lang, 5> kAllLangs = {Lang::en, Lang::fr, Lang::de,
                                                  Lang::it, Lang::es};

std::string_view to_string(Lang lang);
std::optional<Lang> parse_lang(std::string_view code);
// Throws ConfigError on unknown codes.
Lang lang_from_string(std::string_view code);

struct LanguagePair {
  Lang source = Lang::en;
  Lang target = Lang::en;

  friend bool operator==(const LanguagePair&, const LanguagePair&) = default;
  friend auto operator<=>(const LanguagePair&, const LanguagePair&) = default;
};

// Served pairs: the two sides differ and one of them is English.
bool is_supported(const LanguagePair& pair);
const std::array<LanguagePair, 8>& supported_pairs();

// "de-en" form.
std::string to_string(const LanguagePair& pair);
std::optional<LanguagePair> parse_pair(std::string_view text);
LanguagePair pair_from_string(std::string_view text);

}  // namespace mtkit
