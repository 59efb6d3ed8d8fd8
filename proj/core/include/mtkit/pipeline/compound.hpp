#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mtkit::pipeline {

// Appended to every non-final compound part: "grund⊕ rechte".
inline constexpr std::string_view kCompoundJoint = "⊕";

class CompoundLexicon {
 public:
  explicit CompoundLexicon(std::size_t min_part_length = 4) : min_part_length_(min_part_length) {}

  // Keys are lower-cased; frequencies must be positive.
  void add(std::string_view word, std::size_t frequency = 1);
  std::size_t frequency(std::string_view lowered) const;
  std::size_t min_part_length() const { return min_part_length_; }
  std::size_t size() const { return freq_.size(); }

  // "word count" lines.
  static CompoundLexicon parse(std::string_view content, std::size_t min_part_length = 4);
  static CompoundLexicon load(const std::filesystem::path& path, std::size_t min_part_length = 4);
  // Word frequencies of whitespace-tokenized lines.
  static CompoundLexicon from_corpus(const std::vector<std::string>& lines,
                                     std::size_t min_part_length = 4);
  std::string to_text() const;

 private:
  std::size_t min_part_length_;
  std::unordered_map<std::string, std::size_t> freq_;
};

// Among all decompositions into lexicon words of at least min_part_length
// characters, each optionally followed by a linking "s" or "es", picks the
// one with the highest geometric mean of part frequencies. The whole word
// competes as a one-part candidate when it is in the lexicon; ties prefer
// fewer parts. Returns the token alone when nothing beats it.
std::vector<std::string> split_compound(std::string_view token, const CompoundLexicon& lexicon);

// Glues every token ending in the joint marker to its successor.
std::vector<std::string> rejoin_compounds(const std::vector<std::string>& tokens);

}  // namespace mtkit::pipeline
