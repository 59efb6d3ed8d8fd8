#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mtkit::pipeline {

class TruecaseModel {
 public:
  struct Form {
    std::string surface;
    std::size_t count = 0;
  };

  // Records one surface occurrence.
  void add(std::string_view surface, std::size_t count = 1);
  // Most frequent surface form for the lower-cased key; ties prefer the
  // all-lower-case form, then the lexicographically smallest.
  std::optional<Form> best(std::string_view lowered) const;
  std::size_t size() const { return forms_.size(); }

  // "surface count" lines, every observed form.
  std::string to_text() const;
  static TruecaseModel from_text(std::string_view content);

  const std::map<std::string, std::map<std::string, std::size_t>>& forms() const { return forms_; }

 private:
  std::map<std::string, std::map<std::string, std::size_t>> forms_;  // lower -> surface -> count
};

// Counts token casings on tokenized sentences, skipping the sentence-initial
// cased token (its capitalization is positional, not lexical) and placeholders.
TruecaseModel train_truecaser(const std::vector<std::vector<std::string>>& sentences);

enum class CaseDirection { truecase, detruecase };

// Index of the first token carrying a letter, skipping placeholders.
std::optional<std::size_t> first_cased_token(const std::vector<std::string>& tokens);

// truecase: the sentence-initial token becomes its most frequent corpus
// casing (unknown tokens pass through). detruecase: the first letter of the
// sentence-initial token is upper-cased.
std::vector<std::string> recase(std::vector<std::string> tokens, const TruecaseModel& model,
                                CaseDirection direction);

void save_truecaser(const TruecaseModel& model, const std::filesystem::path& path);
TruecaseModel load_truecaser(const std::filesystem::path& path);

}  // namespace mtkit::pipeline
