#include "mtkit/pipeline/truecaser.hpp"

#include "mtkit/errors.hpp"
#include "mtkit/pipeline/masking.hpp"
#include "mtkit/text_io.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::pipeline {

void TruecaseModel::add(std::string_view surface, std::size_t count) {
  forms_[unicode::to_lower(surface)][std::string(surface)] += count;
}

std::optional<TruecaseModel::Form> TruecaseModel::best(std::string_view lowered) const {
  auto it = forms_.find(std::string(lowered));
  if (it == forms_.end() || it->second.empty()) return std::nullopt;
  const std::string* winner = nullptr;
  std::size_t winner_count = 0;
  for (const auto& [surface, count] : it->second) {
    bool better = winner == nullptr || count > winner_count ||
                  (count == winner_count && surface == it->first && *winner != it->first);
    if (better) {
      winner = &surface;
      winner_count = count;
    }
  }
  return Form{*winner, winner_count};
}

std::string TruecaseModel::to_text() const {
  std::string out;
  for (const auto& [lower, surfaces] : forms_) {
    for (const auto& [surface, count] : surfaces) {
      out += surface;
      out += ' ';
      out += std::to_string(count);
      out += '\n';
    }
  }
  return out;
}

TruecaseModel TruecaseModel::from_text(std::string_view content) {
  TruecaseModel model;
  auto lines = split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto fields = unicode::split_whitespace(lines[i]);
    if (fields.empty()) continue;
    if (fields.size() != 2) throw ParseError("expected 'surface count'", i + 1);
    std::size_t count = 0;
    try {
      std::size_t used = 0;
      count = std::stoull(std::string(fields[1]), &used);
      if (used != fields[1].size()) throw std::invalid_argument("count");
    } catch (const std::exception&) {
      throw ParseError("bad count '" + std::string(fields[1]) + "'", i + 1);
    }
    model.add(fields[0], count);
  }
  return model;
}

std::optional<std::size_t> first_cased_token(const std::vector<std::string>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_placeholder(tokens[i])) continue;
    if (unicode::has_letter(tokens[i])) return i;
  }
  return std::nullopt;
}

TruecaseModel train_truecaser(const std::vector<std::vector<std::string>>& sentences) {
  TruecaseModel model;
  for (const auto& tokens : sentences) {
    auto first = first_cased_token(tokens);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (first && i == *first) continue;
      if (is_placeholder(tokens[i]) || !unicode::has_letter(tokens[i])) continue;
      model.add(tokens[i]);
    }
  }
  return model;
}

std::vector<std::string> recase(std::vector<std::string> tokens, const TruecaseModel& model,
                                CaseDirection direction) {
  auto first = first_cased_token(tokens);
  if (!first) return tokens;
  auto& tok = tokens[*first];
  if (direction == CaseDirection::truecase) {
    if (auto form = model.best(unicode::to_lower(tok))) tok = form->surface;
  } else {
    tok = unicode::upper_first(tok);
  }
  return tokens;
}

void save_truecaser(const TruecaseModel& model, const std::filesystem::path& path) {
  write_file(path, model.to_text());
}

TruecaseModel load_truecaser(const std::filesystem::path& path) {
  try {
    return TruecaseModel::from_text(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.line());
  }
}

}  // namespace mtkit::pipeline
