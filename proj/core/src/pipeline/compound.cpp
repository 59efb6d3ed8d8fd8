#include "mtkit/pipeline/compound.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "mtkit/errors.hpp"
#include "mtkit/pipeline/masking.hpp"
#include "mtkit/text_io.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::pipeline {

void CompoundLexicon::add(std::string_view word, std::size_t frequency) {
  if (frequency == 0) throw ConfigError("compound lexicon frequencies must be positive");
  freq_[unicode::to_lower(word)] += frequency;
}

std::size_t CompoundLexicon::frequency(std::string_view lowered) const {
  auto it = freq_.find(std::string(lowered));
  return it == freq_.end() ? 0 : it->second;
}

CompoundLexicon CompoundLexicon::parse(std::string_view content, std::size_t min_part_length) {
  CompoundLexicon lexicon(min_part_length);
  auto lines = split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto fields = unicode::split_whitespace(lines[i]);
    if (fields.empty() || fields[0].starts_with('#')) continue;
    std::size_t count = 1;
    if (fields.size() > 2) throw ParseError("expected 'word [count]'", i + 1);
    if (fields.size() == 2) {
      try {
        std::size_t used = 0;
        count = std::stoull(std::string(fields[1]), &used);
        if (used != fields[1].size() || count == 0) throw std::invalid_argument("count");
      } catch (const std::exception&) {
        throw ParseError("bad count '" + std::string(fields[1]) + "'", i + 1);
      }
    }
    lexicon.add(fields[0], count);
  }
  return lexicon;
}

CompoundLexicon CompoundLexicon::load(const std::filesystem::path& path,
                                      std::size_t min_part_length) {
  try {
    return parse(read_file(path), min_part_length);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.line());
  }
}

CompoundLexicon CompoundLexicon::from_corpus(const std::vector<std::string>& lines,
                                             std::size_t min_part_length) {
  CompoundLexicon lexicon(min_part_length);
  for (const auto& line : lines) {
    for (auto word : unicode::split_whitespace(line)) {
      if (unicode::has_letter(word) && !is_placeholder(word)) lexicon.add(word);
    }
  }
  return lexicon;
}

std::string CompoundLexicon::to_text() const {
  std::map<std::string, std::size_t> sorted(freq_.begin(), freq_.end());
  std::string out;
  for (const auto& [word, count] : sorted) out += word + ' ' + std::to_string(count) + '\n';
  return out;
}

namespace {

bool all_letters(const std::u32string& cps) {
  for (char32_t cp : cps) {
    if (!unicode::is_letter(cp)) return false;
  }
  return !cps.empty();
}

struct Best {
  double log_sum = -std::numeric_limits<double>::infinity();
  std::size_t parts = 0;
  std::vector<std::size_t> cuts;  // end offsets (code points) of every part
  bool valid = false;
};

}  // namespace

std::vector<std::string> split_compound(std::string_view token, const CompoundLexicon& lexicon) {
  std::vector<std::string> unchanged{std::string(token)};
  std::u32string cps = unicode::decode(token);
  const std::size_t min_len = lexicon.min_part_length();
  if (!all_letters(cps) || cps.size() < 2 * min_len) {
    return unchanged;
  }
  std::u32string lower = unicode::decode(unicode::to_lower(token));
  if (lower.size() != cps.size()) return unchanged;
  const std::size_t n = cps.size();

  // sum[k][i]: largest sum of log frequencies over decompositions of
  // lower[0, i) into k parts; from[k][i] is the start of the last part.
  const double kNone = -std::numeric_limits<double>::infinity();
  const std::size_t max_parts = n / min_len;
  std::vector<std::vector<double>> sum(max_parts + 1, std::vector<double>(n + 1, kNone));
  std::vector<std::vector<std::size_t>> from(max_parts + 1, std::vector<std::size_t>(n + 1, 0));
  sum[0][0] = 0;
  for (std::size_t k = 1; k <= max_parts; ++k) {
    for (std::size_t start = 0; start < n; ++start) {
      if (sum[k - 1][start] == kNone) continue;
      for (std::size_t end = start + min_len; end <= n; ++end) {
        std::size_t freq = lexicon.frequency(unicode::encode(lower.substr(start, end - start)));
        if (freq == 0) continue;
        double value = sum[k - 1][start] + std::log(static_cast<double>(freq));
        std::vector<std::size_t> stops{end};
        if (end + 1 < n && lower[end] == U's') stops.push_back(end + 1);
        if (end + 2 < n && lower[end] == U'e' && lower[end + 1] == U's') stops.push_back(end + 2);
        for (std::size_t stop : stops) {
          if (value > sum[k][stop]) {
            sum[k][stop] = value;
            from[k][stop] = start;
          }
        }
      }
    }
  }
  Best winner;
  for (std::size_t k = 1; k <= max_parts; ++k) {
    if (sum[k][n] == kNone) continue;
    double mean = sum[k][n] / static_cast<double>(k);
    double current = winner.valid ? winner.log_sum / static_cast<double>(winner.parts) : 0;
    if (!winner.valid || mean > current + 1e-12) {
      winner.valid = true;
      winner.log_sum = sum[k][n];
      winner.parts = k;
    }
  }
  if (winner.valid) {
    std::size_t pos = n;
    for (std::size_t k = winner.parts; k > 0; --k) {
      winner.cuts.insert(winner.cuts.begin(), pos);
      pos = from[k][pos];
    }
  }

  if (!winner.valid || winner.parts < 2) return unchanged;
  std::vector<std::string> parts;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < winner.cuts.size(); ++i) {
    std::size_t end = winner.cuts[i];
    std::string part = unicode::encode(std::u32string_view(cps).substr(begin, end - begin));
    if (i + 1 < winner.cuts.size()) part += kCompoundJoint;
    parts.push_back(std::move(part));
    begin = end;
  }
  return parts;
}

std::vector<std::string> rejoin_compounds(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  std::string pending;
  bool has_pending = false;
  for (const auto& tok : tokens) {
    std::string merged = has_pending ? pending + tok : tok;
    if (merged.size() > kCompoundJoint.size() && merged.ends_with(kCompoundJoint)) {
      pending = merged.substr(0, merged.size() - kCompoundJoint.size());
      has_pending = true;
      continue;
    }
    out.push_back(std::move(merged));
    has_pending = false;
    pending.clear();
  }
  if (has_pending) out.push_back(pending);
  return out;
}

}  // namespace mtkit::pipeline
