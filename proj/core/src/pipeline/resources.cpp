#include "mtkit/pipeline/resources.hpp"

#include <map>

#include "mtkit/errors.hpp"
#include "mtkit/text_io.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::pipeline {

namespace detail {
const std::map<std::string, std::string_view>& embedded_data_files();
}

namespace {

// Data lines with comments ('#' in the first column) and blanks removed.
std::vector<std::pair<std::size_t, std::string>> data_lines(std::string_view content) {
  std::vector<std::pair<std::size_t, std::string>> out;
  auto lines = split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    out.emplace_back(i + 1, line);
  }
  return out;
}

char32_t parse_code_point(std::string_view hex, std::size_t line) {
  if (hex.rfind("U+", 0) == 0) hex.remove_prefix(2);
  try {
    std::size_t used = 0;
    auto value = std::stoul(std::string(hex), &used, 16);
    if (used != hex.size() || value > 0x10FFFF) throw std::invalid_argument("range");
    return static_cast<char32_t>(value);
  } catch (const std::exception&) {
    throw ParseError("bad code point '" + std::string(hex) + "'", line);
  }
}

}  // namespace

std::string_view embedded_file(std::string_view name) {
  const auto& files = detail::embedded_data_files();
  auto it = files.find(std::string(name));
  if (it == files.end()) throw Error("no embedded data file '" + std::string(name) + "'");
  return it->second;
}

NormalizationTable NormalizationTable::parse(std::string_view content) {
  NormalizationTable table;
  for (const auto& [lineno, line] : data_lines(content)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected tab-separated fields", lineno);
    auto rest = std::string_view(line).substr(tab + 1);
    auto tab2 = rest.find('\t');
    auto replacement = rest.substr(0, tab2);
    char32_t from = parse_code_point(std::string_view(line).substr(0, tab), lineno);
    std::u32string to;
    if (replacement != "-") {
      for (auto field : unicode::split_whitespace(replacement)) {
        to.push_back(parse_code_point(field, lineno));
      }
    }
    table.map_[from] = std::move(to);
  }
  return table;
}

NormalizationTable NormalizationTable::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

const NormalizationTable& NormalizationTable::builtin() {
  static const NormalizationTable table = parse(embedded_file("normalization.tsv"));
  return table;
}

const std::u32string* NormalizationTable::find(char32_t cp) const {
  auto it = map_.find(cp);
  return it == map_.end() ? nullptr : &it->second;
}

PrefixList PrefixList::parse(std::string_view content) {
  PrefixList list;
  for (const auto& [lineno, line] : data_lines(content)) {
    auto fields = unicode::split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() > 1 && fields[1] == "#NUMERIC_ONLY#") {
      list.numeric_only_.emplace(fields[0]);
    } else {
      list.always_.emplace(fields[0]);
    }
  }
  return list;
}

PrefixList PrefixList::load(const std::filesystem::path& path) { return parse(read_file(path)); }

const PrefixList& PrefixList::builtin(Lang lang) {
  static const std::map<Lang, PrefixList> lists = [] {
    std::map<Lang, PrefixList> m;
    for (Lang l : kAllLangs) {
      m.emplace(l, parse(embedded_file("nonbreaking_prefix." + std::string(to_string(l)))));
    }
    return m;
  }();
  return lists.at(lang);
}

bool PrefixList::is_nonbreaking(std::string_view word, bool next_is_number) const {
  if (always_.find(word) != always_.end()) return true;
  return next_is_number && numeric_only_.find(word) != numeric_only_.end();
}

bool PrefixList::contains(std::string_view word) const {
  return always_.find(word) != always_.end();
}

Glossary Glossary::parse(std::string_view content) {
  Glossary g;
  for (const auto& [lineno, line] : data_lines(content)) g.terms.push_back(line);
  return g;
}

Glossary Glossary::load(const std::filesystem::path& path) { return parse(read_file(path)); }

const Glossary& Glossary::builtin() {
  static const Glossary g = parse(embedded_file("dnt_glossary.txt"));
  return g;
}

}  // namespace mtkit::pipeline
