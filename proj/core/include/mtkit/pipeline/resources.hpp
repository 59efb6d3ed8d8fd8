#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mtkit/language.hpp"

namespace mtkit::pipeline {

// Contents of a data file compiled into the library (see core/data/).
// Throws mtkit::Error for unknown names.
std::string_view embedded_file(std::string_view name);

// Code point substitutions applied by normalize_chars.
class NormalizationTable {
 public:
  static NormalizationTable parse(std::string_view content);
  static NormalizationTable load(const std::filesystem::path& path);
  static const NormalizationTable& builtin();

  // nullptr when `cp` is not remapped; an empty string means deletion.
  const std::u32string* find(char32_t cp) const;
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<char32_t, std::u32string> map_;
};

// Words that do not end a sentence when followed by ".".
class PrefixList {
 public:
  static PrefixList parse(std::string_view content);
  static PrefixList load(const std::filesystem::path& path);
  static const PrefixList& builtin(Lang lang);

  bool is_nonbreaking(std::string_view word, bool next_is_number) const;
  bool contains(std::string_view word) const;

 private:
  std::set<std::string, std::less<>> always_;
  std::set<std::string, std::less<>> numeric_only_;
};

struct Glossary {
  std::vector<std::string> terms;

  static Glossary parse(std::string_view content);
  static Glossary load(const std::filesystem::path& path);
  static const Glossary& builtin();
};

}  // namespace mtkit::pipeline
