#include "mtkit/bpe.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "mtkit/errors.hpp"
#include "mtkit/text_io.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::bpe {

namespace {

std::string rank_key(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key += ' ';
  key.append(right);
  return key;
}

std::vector<std::string> initial_symbols(std::string_view word) {
  auto symbols = unicode::characters(word);
  if (!symbols.empty()) symbols.back().append(kEndOfWord);
  return symbols;
}

// Merges every non-overlapping occurrence of (left, right), scanning left to right.
bool merge_pair(std::vector<std::string>& symbols, const std::string& left,
                const std::string& right) {
  bool changed = false;
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i + 1 < symbols.size() && symbols[i] == left && symbols[i + 1] == right) {
      out.push_back(left + right);
      ++i;
      changed = true;
    } else {
      out.push_back(std::move(symbols[i]));
    }
  }
  symbols = std::move(out);
  return changed;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

BpeModel::BpeModel(std::vector<SymbolPair> merges, std::string separator)
    : merges_(std::move(merges)), separator_(std::move(separator)) {
  if (separator_.empty() || separator_.find(' ') != std::string::npos) {
    throw ConfigError("BPE separator must be non-empty and contain no spaces");
  }
  ranks_.reserve(merges_.size());
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    if (!ranks_.emplace(rank_key(merges_[i].first, merges_[i].second), i).second) {
      throw ConfigError("duplicate BPE merge '" + merges_[i].first + " " +
                        merges_[i].second + "'");
    }
  }
}

std::optional<std::size_t> BpeModel::rank(const std::string& left,
                                          const std::string& right) const {
  auto it = ranks_.find(rank_key(left, right));
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> BpeModel::segment_token(std::string_view token) const {
  auto symbols = initial_symbols(token);
  while (symbols.size() > 1) {
    std::size_t best = merges_.size();
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      if (auto r = rank(symbols[i], symbols[i + 1]); r && *r < best) best = *r;
    }
    if (best == merges_.size()) break;
    merge_pair(symbols, merges_[best].first, merges_[best].second);
  }
  if (!symbols.empty()) {
    auto& last = symbols.back();
    last.erase(last.size() - kEndOfWord.size());
    if (ends_with(last, separator_) && unicode::length(last) > 1) {
      auto chars = unicode::characters(last);
      std::string tail = chars.back();
      last.erase(last.size() - tail.size());
      symbols.push_back(std::move(tail));
    }
  }
  return symbols;
}

std::string BpeModel::apply_token(std::string_view token) const {
  auto units = segment_token(token);
  std::string out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    out += units[i];
    if (i + 1 < units.size()) {
      out += separator_;
      out += ' ';
    }
  }
  return out;
}

std::string BpeModel::apply(std::string_view tokenized_line) const {
  std::string out;
  for (auto token : unicode::split_whitespace(tokenized_line)) {
    if (!out.empty()) out += ' ';
    out += apply_token(token);
  }
  return out;
}

BpeModel BpeModel::prefix(std::size_t count) const {
  count = std::min(count, merges_.size());
  return BpeModel(std::vector<SymbolPair>(merges_.begin(), merges_.begin() + count),
                  separator_);
}

std::string BpeModel::to_text() const {
  std::string out = "#mtkit-bpe version=1 separator=" + separator_ +
                    " end_of_word=" + std::string(kEndOfWord) + "\n";
  for (const auto& [left, right] : merges_) {
    out += left;
    out += ' ';
    out += right;
    out += '\n';
  }
  return out;
}

BpeModel BpeModel::from_text(std::string_view content) {
  auto lines = split_lines(content);
  std::string separator(kDefaultSeparator);
  std::size_t first = 0;
  if (!lines.empty() && lines[0].rfind("#", 0) == 0) {
    first = 1;
    for (auto field : unicode::split_whitespace(lines[0])) {
      if (field.rfind("separator=", 0) == 0) separator = std::string(field.substr(10));
      if (field.rfind("version=", 0) == 0 && field != "version=1") {
        throw ParseError("unsupported BPE model version '" +
                             std::string(field.substr(8)) + "'",
                         1);
      }
    }
  }
  std::vector<SymbolPair> merges;
  for (std::size_t i = first; i < lines.size(); ++i) {
    auto fields = unicode::split_whitespace(lines[i]);
    if (fields.empty()) continue;
    if (fields.size() != 2) {
      throw ParseError("expected two symbols per merge line, found " +
                           std::to_string(fields.size()),
                       i + 1);
    }
    merges.emplace_back(std::string(fields[0]), std::string(fields[1]));
  }
  try {
    return BpeModel(std::move(merges), std::move(separator));
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), lines.size());
  }
}

void count_words(const std::vector<std::string>& lines, WordCounts& counts) {
  for (const auto& line : lines) {
    for (auto tok : unicode::split_whitespace(line)) ++counts[std::string(tok)];
  }
}

BpeModel learn_bpe(const std::vector<std::vector<std::string>>& corpora,
                   const LearnOptions& options, LearnTrace* trace) {
  WordCounts counts;
  for (const auto& corpus : corpora) count_words(corpus, counts);
  return learn_bpe(counts, options, trace);
}

BpeModel learn_bpe(const WordCounts& counts, const LearnOptions& options,
                   LearnTrace* trace) {
  if (counts.empty()) throw TrainingError("cannot learn BPE merges from an empty corpus");

  struct Word {
    std::vector<std::string> symbols;
    std::int64_t count;
  };
  std::vector<std::pair<std::string, std::size_t>> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Word> words;
  words.reserve(sorted.size());
  for (const auto& [w, c] : sorted) {
    words.push_back({initial_symbols(w), static_cast<std::int64_t>(c)});
  }

  std::map<SymbolPair, std::int64_t> pair_counts;
  std::map<SymbolPair, std::set<std::size_t>> occurrences;
  std::set<std::pair<std::int64_t, SymbolPair>> queue;  // (-count, pair)

  auto adjust = [&](const SymbolPair& p, std::int64_t delta, std::size_t word) {
    auto& c = pair_counts[p];
    if (c > 0) queue.erase({-c, p});
    c += delta;
    if (c > 0) {
      queue.insert({-c, p});
      if (delta > 0) occurrences[p].insert(word);
    } else {
      pair_counts.erase(p);
    }
  };
  auto add_word = [&](std::size_t idx, std::int64_t sign) {
    const auto& w = words[idx];
    for (std::size_t i = 0; i + 1 < w.symbols.size(); ++i) {
      adjust({w.symbols[i], w.symbols[i + 1]}, sign * w.count, idx);
    }
  };
  for (std::size_t idx = 0; idx < words.size(); ++idx) add_word(idx, +1);

  std::vector<SymbolPair> merges;
  merges.reserve(std::min<std::size_t>(options.num_merges, 1 << 16));
  while (merges.size() < options.num_merges && !queue.empty()) {
    auto [neg, best] = *queue.begin();
    if (static_cast<std::size_t>(-neg) < std::max<std::size_t>(options.min_frequency, 1)) break;
    merges.push_back(best);
    if (trace) trace->frequencies.push_back(static_cast<std::size_t>(-neg));
    auto affected = std::move(occurrences[best]);
    occurrences.erase(best);
    for (std::size_t idx : affected) {
      auto& symbols = words[idx].symbols;
      auto updated = symbols;
      if (!merge_pair(updated, best.first, best.second)) continue;
      add_word(idx, -1);
      symbols = std::move(updated);
      add_word(idx, +1);
    }
  }
  return BpeModel(std::move(merges), options.separator);
}

std::string undo_bpe(std::string_view segmented, std::string_view separator) {
  std::string joint(separator);
  joint += ' ';
  if (ends_with(segmented, separator)) segmented.remove_suffix(separator.size());
  std::string out;
  out.reserve(segmented.size());
  std::size_t pos = 0;
  while (true) {
    auto hit = segmented.find(joint, pos);
    if (hit == std::string_view::npos) {
      out.append(segmented.substr(pos));
      break;
    }
    out.append(segmented.substr(pos, hit - pos));
    pos = hit + joint.size();
  }
  return out;
}

void save_bpe(const BpeModel& model, const std::filesystem::path& path) {
  write_file(path, model.to_text());
}

BpeModel load_bpe(const std::filesystem::path& path) {
  try {
    return BpeModel::from_text(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.line());
  }
}

}  // namespace mtkit::bpe
