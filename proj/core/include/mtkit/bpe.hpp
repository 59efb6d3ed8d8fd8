#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mtkit::bpe {

inline constexpr std::string_view kDefaultSeparator = "@@";
// Appended to the final character of every word during learning so merges
// can distinguish word-final units.
inline constexpr std::string_view kEndOfWord = "</w>";

using SymbolPair = std::pair<std::string, std::string>;

struct LearnOptions {
  std::size_t num_merges = 32000;
  // Learning stops once the best pair occurs fewer times than this.
  std::size_t min_frequency = 2;
  std::string separator = std::string(kDefaultSeparator);
};

class BpeModel {
 public:
  BpeModel() : BpeModel({}, std::string(kDefaultSeparator)) {}
  BpeModel(std::vector<SymbolPair> merges, std::string separator);

  const std::vector<SymbolPair>& merges() const { return merges_; }
  std::size_t num_merges() const { return merges_.size(); }
  const std::string& separator() const { return separator_; }
  std::optional<std::size_t> rank(const std::string& left, const std::string& right) const;

  // Subword units of one token, without separators. A final unit that would
  // end in the separator string is split before its last character so the
  // segmented form always decodes unambiguously.
  std::vector<std::string> segment_token(std::string_view token) const;
  // Segments every whitespace token; non-final units carry the separator.
  std::string apply(std::string_view tokenized_line) const;
  std::string apply_token(std::string_view token) const;

  // The first `count` merges.
  BpeModel prefix(std::size_t count) const;

  std::string to_text() const;
  static BpeModel from_text(std::string_view content);

 private:
  std::vector<SymbolPair> merges_;
  std::string separator_;
  std::unordered_map<std::string, std::size_t> ranks_;
};

using WordCounts = std::unordered_map<std::string, std::size_t>;

void count_words(const std::vector<std::string>& lines, WordCounts& counts);

struct LearnTrace {
  // Corpus frequency of each learned pair at the moment it was merged.
  std::vector<std::size_t> frequencies;
};

// Joint model over all given corpora. Throws TrainingError when they hold no
// tokens at all. Frequency ties go to the lexicographically smallest pair.
BpeModel learn_bpe(const std::vector<std::vector<std::string>>& corpora,
                   const LearnOptions& options = {}, LearnTrace* trace = nullptr);
BpeModel learn_bpe(const WordCounts& counts, const LearnOptions& options = {},
                   LearnTrace* trace = nullptr);

// Removes "<sep> " joints; a dangling separator at the end of the line is
// stripped.
std::string undo_bpe(std::string_view segmented, std::string_view separator = kDefaultSeparator);

void save_bpe(const BpeModel& model, const std::filesystem::path& path);
BpeModel load_bpe(const std::filesystem::path& path);

}  // namespace mtkit::bpe
