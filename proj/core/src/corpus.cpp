#include "mtkit/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mtkit/errors.hpp"
#include "mtkit/text_io.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::corpus {

Segment::Segment(std::string_view text) {
  if (text.find('\n') != std::string_view::npos) {
    throw Error("segment text must not contain a newline");
  }
  text_ = unicode::nfc(text);
  token_count_ = unicode::count_tokens(text_);
}

void ParallelCorpus::validate() const {
  if (langs.source == langs.target) {
    throw ConfigError("corpus languages must differ (both are " +
                      std::string(to_string(langs.source)) + ")");
  }
  if (langs.source != Lang::en && langs.target != Lang::en) {
    throw ConfigError("one side of the corpus must be English, got " + to_string(langs));
  }
}

namespace {

ParallelCorpus from_columns(const std::vector<std::string>& src,
                            const std::vector<std::string>& tgt, LanguagePair langs,
                            const std::string& provenance) {
  ParallelCorpus corpus;
  corpus.langs = langs;
  corpus.validate();
  corpus.pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    corpus.pairs.push_back({Segment(src[i]), Segment(tgt[i]), provenance});
  }
  return corpus;
}

}  // namespace

ParallelCorpus parse_tsv(std::string_view content, LanguagePair langs,
                         const std::string& provenance) {
  auto lines = split_lines(content);
  std::vector<std::string> src, tgt;
  src.reserve(lines.size());
  tgt.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    auto columns = std::count(line.begin(), line.end(), '\t') + 1;
    if (columns != 2) {
      throw FormatError("expected 2 tab-separated columns, found " +
                            std::to_string(columns),
                        i + 1);
    }
    auto tab = line.find('\t');
    src.push_back(line.substr(0, tab));
    tgt.push_back(line.substr(tab + 1));
  }
  return from_columns(src, tgt, langs, provenance);
}

ParallelCorpus load_parallel(const CorpusLocation& location, LanguagePair langs,
                             const std::string& provenance) {
  if (location.format == CorpusFormat::tsv) {
    try {
      return parse_tsv(read_file(location.source), langs, provenance);
    } catch (const FormatError& e) {
      throw FormatError(location.source.string() + ": " + e.detail(), e.line());
    } catch (const EncodingError& e) {
      throw EncodingError(location.source.string() + ": " + e.detail(), e.line());
    }
  }
  auto src = read_lines(location.source);
  auto tgt = read_lines(location.target);
  if (src.size() != tgt.size()) throw AlignmentError(src.size(), tgt.size());
  return from_columns(src, tgt, langs, provenance);
}

void save_parallel(const ParallelCorpus& corpus, const CorpusLocation& location) {
  if (location.format == CorpusFormat::tsv) {
    std::string content;
    for (std::size_t i = 0; i < corpus.pairs.size(); ++i) {
      const auto& p = corpus.pairs[i];
      if (p.source.text().find('\t') != std::string::npos ||
          p.target.text().find('\t') != std::string::npos) {
        throw FormatError("segment contains a tab and cannot be written as TSV", i + 1);
      }
      content += p.source.text();
      content += '\t';
      content += p.target.text();
      content += '\n';
    }
    write_file(location.source, content);
    return;
  }
  std::vector<std::string> src, tgt;
  src.reserve(corpus.size());
  tgt.reserve(corpus.size());
  for (const auto& p : corpus.pairs) {
    src.push_back(p.source.text());
    tgt.push_back(p.target.text());
  }
  write_lines(location.source, src);
  write_lines(location.target, tgt);
}

std::vector<Segment> load_monolingual(const std::filesystem::path& path) {
  std::vector<Segment> out;
  for (const auto& line : read_lines(path)) out.emplace_back(line);
  return out;
}

void CleaningConfig::validate() const {
  if (min_tokens < 1) throw ConfigError("min_tokens must be at least 1");
  if (min_tokens > max_tokens) {
    throw ConfigError("min_tokens (" + std::to_string(min_tokens) +
                      ") exceeds max_tokens (" + std::to_string(max_tokens) + ")");
  }
  if (!(max_length_ratio >= 1.0)) throw ConfigError("max_length_ratio must be >= 1");
}

std::string_view to_string(CleaningRule rule) {
  switch (rule) {
    case CleaningRule::empty: return "empty";
    case CleaningRule::too_short: return "too_short";
    case CleaningRule::too_long: return "too_long";
    case CleaningRule::ratio: return "ratio";
    case CleaningRule::duplicate: return "duplicate";
  }
  return "unknown";
}

std::size_t CleaningReport::removed_total() const {
  std::size_t total = 0;
  for (const auto& [rule, count] : removed_by_rule) total += count;
  return total;
}

std::string CleaningReport::to_json() const {
  nlohmann::ordered_json j;
  j["input_pairs"] = input_pairs;
  j["retained_pairs"] = retained_pairs;
  nlohmann::ordered_json removed = nlohmann::ordered_json::object();
  for (CleaningRule rule : kCleaningRules) {
    auto it = removed_by_rule.find(std::string(to_string(rule)));
    removed[std::string(to_string(rule))] = it == removed_by_rule.end() ? 0 : it->second;
  }
  j["removed_by_rule"] = removed;
  return j.dump(2);
}

std::string CleaningReport::to_table() const {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-12s %10zu\n", "input", input_pairs);
  out << buf;
  for (CleaningRule rule : kCleaningRules) {
    auto it = removed_by_rule.find(std::string(to_string(rule)));
    std::size_t count = it == removed_by_rule.end() ? 0 : it->second;
    double pct = input_pairs ? 100.0 * static_cast<double>(count) / input_pairs : 0.0;
    std::snprintf(buf, sizeof buf, "%-12s %10zu %6.2f%%\n",
                  std::string(to_string(rule)).c_str(), count, pct);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "%-12s %10zu\n", "retained", retained_pairs);
  out << buf;
  return out.str();
}

std::pair<ParallelCorpus, CleaningReport> clean(const ParallelCorpus& corpus,
                                                const CleaningConfig& config) {
  config.validate();
  ParallelCorpus kept;
  kept.langs = corpus.langs;
  kept.copied = corpus.copied;
  CleaningReport report;
  report.input_pairs = corpus.size();
  for (CleaningRule rule : kCleaningRules) report.removed_by_rule[std::string(to_string(rule))] = 0;

  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (const auto& pair : corpus.pairs) {
    const std::size_t s = pair.source.token_count();
    const std::size_t t = pair.target.token_count();
    std::optional<CleaningRule> violated;
    if (s == 0 || t == 0) {
      violated = CleaningRule::empty;
    } else if (s < config.min_tokens || t < config.min_tokens) {
      violated = CleaningRule::too_short;
    } else if (s > config.max_tokens || t > config.max_tokens) {
      violated = CleaningRule::too_long;
    } else if (static_cast<double>(std::max(s, t)) / static_cast<double>(std::min(s, t)) >
               config.max_length_ratio) {
      violated = CleaningRule::ratio;
    } else if (config.drop_duplicates &&
               !seen.emplace(pair.source.text(), pair.target.text()).second) {
      violated = CleaningRule::duplicate;
    }
    if (violated) {
      ++report.removed_by_rule[std::string(to_string(*violated))];
    } else {
      kept.pairs.push_back(pair);
    }
  }
  report.retained_pairs = kept.size();
  return {std::move(kept), std::move(report)};
}

std::string CorpusStats::header() const {
  return "Sent | Words(" + std::string(to_string(langs.source)) + ") | Words(" +
         std::string(to_string(langs.target)) + ")";
}

std::string CorpusStats::row() const {
  return std::to_string(segments) + " | " + std::to_string(source_words) + " | " +
         std::to_string(target_words);
}

CorpusStats corpus_stats(const ParallelCorpus& corpus) {
  CorpusStats stats;
  stats.langs = corpus.langs;
  stats.segments = corpus.size();
  for (const auto& p : corpus.pairs) {
    stats.source_words += p.source.token_count();
    stats.target_words += p.target.token_count();
  }
  return stats;
}

}  // namespace mtkit::corpus
