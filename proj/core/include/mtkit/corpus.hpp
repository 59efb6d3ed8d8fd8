#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtkit/language.hpp"

namespace mtkit::corpus {

// One line of text: NFC-normalized, newline-free, with a cached count of
// whitespace-delimited tokens.
class Segment {
 public:
  Segment() = default;
  // Throws mtkit::Error if `text` contains a newline.
  explicit Segment(std::string_view text);

  const std::string& text() const { return text_; }
  std::size_t token_count() const { return token_count_; }
  bool empty() const { return token_count_ == 0; }

  friend bool operator==(const Segment& a, const Segment& b) { return a.text_ == b.text_; }

 private:
  std::string text_;
  std::size_t token_count_ = 0;
};

struct SegmentPair {
  Segment source;
  Segment target;
  std::string provenance;

  friend bool operator==(const SegmentPair&, const SegmentPair&) = default;
};

struct ParallelCorpus {
  std::vector<SegmentPair> pairs;
  LanguagePair langs;
  // Synthetic corpus whose source side is a copy of target-language text.
  bool copied = false;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  // Throws ConfigError unless the languages differ and one of them is English.
  void validate() const;
};

enum class CorpusFormat { dual, tsv };

struct CorpusLocation {
  CorpusFormat format = CorpusFormat::dual;
  std::filesystem::path source;  // the TSV file in tsv format
  std::filesystem::path target;  // unused in tsv format

  static CorpusLocation dual(std::filesystem::path src, std::filesystem::path tgt) {
    return {CorpusFormat::dual, std::move(src), std::move(tgt)};
  }
  static CorpusLocation tsv(std::filesystem::path file) {
    return {CorpusFormat::tsv, std::move(file), {}};
  }
};

// Throws AlignmentError, EncodingError, FormatError or IoError.
ParallelCorpus load_parallel(const CorpusLocation& location, LanguagePair langs,
                             const std::string& provenance = "corpus");
ParallelCorpus parse_tsv(std::string_view content, LanguagePair langs,
                         const std::string& provenance = "corpus");
void save_parallel(const ParallelCorpus& corpus, const CorpusLocation& location);

std::vector<Segment> load_monolingual(const std::filesystem::path& path);

struct CleaningConfig {
  std::size_t min_tokens = 1;
  std::size_t max_tokens = 100;
  double max_length_ratio = 9.0;
  bool drop_duplicates = false;

  // Throws ConfigError on min_tokens == 0, min > max or ratio < 1.
  void validate() const;
};

// Rules in attribution order; a pair is counted under the first it violates.
enum class CleaningRule { empty, too_short, too_long, ratio, duplicate };
inline constexpr CleaningRule kCleaningRules[] = {
    CleaningRule::empty, CleaningRule::too_short, CleaningRule::too_long,
    CleaningRule::ratio, CleaningRule::duplicate};
std::string_view to_string(CleaningRule rule);

struct CleaningReport {
  std::size_t input_pairs = 0;
  std::size_t retained_pairs = 0;
  std::map<std::string, std::size_t> removed_by_rule;

  std::size_t removed_total() const;
  std::string to_json() const;
  std::string to_table() const;
};

std::pair<ParallelCorpus, CleaningReport> clean(const ParallelCorpus& corpus,
                                                const CleaningConfig& config);

struct CorpusStats {
  std::size_t segments = 0;
  std::size_t source_words = 0;
  std::size_t target_words = 0;
  LanguagePair langs;

  // "Sent | Words(en) | Words(de)" header and the matching row.
  std::string header() const;
  std::string row() const;
};

CorpusStats corpus_stats(const ParallelCorpus& corpus);

}  // namespace mtkit::corpus
