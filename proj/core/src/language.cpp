#include "mtkit/language.hpp"

#include "mtkit/errors.hpp"

namespace mtkit {

std::string_view to_string(Lang lang) {
  switch (lang) {
    case Lang::en: return "en";
    case Lang::fr: return "fr";
    case Lang::de: return "de";
    case Lang::it: return "it";
    case Lang::es: return "es";
  }
  return "??";
}

std::optional<Lang> parse_lang(std::string_view code) {
  for (Lang lang : kAllLangs) {
    if (to_string(lang) == code) return lang;
  }
  return std::nullopt;
}

Lang lang_from_string(std::string_view code) {
  if (auto lang = parse_lang(code)) return *lang;
  throw ConfigError("unknown language code '" + std::string(code) +
                    "' (expected one of en, fr, de, it, es)");
}

bool is_supported(const LanguagePair& pair) {
  return pair.source != pair.target &&
         (pair.source == Lang::en || pair.target == Lang::en);
}

const std::array<LanguagePair, 8>& supported_pairs() {
  static const std::array<LanguagePair, 8> pairs = {{
      {Lang::de, Lang::en}, {Lang::en, Lang::de},
      {Lang::fr, Lang::en}, {Lang::en, Lang::fr},
      {Lang::it, Lang::en}, {Lang::en, Lang::it},
      {Lang::es, Lang::en}, {Lang::en, Lang::es},
  }};
  return pairs;
}

std::string to_string(const LanguagePair& pair) {
  return std::string(to_string(pair.source)) + "-" +
         std::string(to_string(pair.target));
}

std::optional<LanguagePair> parse_pair(std::string_view text) {
  auto dash = text.find_first_of("-_>");
  if (dash == std::string_view::npos) return std::nullopt;
  auto src = parse_lang(text.substr(0, dash));
  auto rest = text.substr(dash + 1);
  if (!rest.empty() && rest.front() == '>') rest.remove_prefix(1);
  auto tgt = parse_lang(rest);
  if (!src || !tgt) return std::nullopt;
  return LanguagePair{*src, *tgt};
}

LanguagePair pair_from_string(std::string_view text) {
  if (auto pair = parse_pair(text)) return *pair;
  throw ConfigError("cannot parse language pair '" + std::string(text) +
                    "' (expected e.g. de-en)");
}

}  // namespace mtkit
