#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mtkit::lm {

enum class Smoothing { interpolated_modified_kneser_ney, witten_bell };
std::string_view to_string(Smoothing smoothing);
// Accepts "kn", "mkn", "interpolated_modified_kneser_ney", "wb", "witten_bell".
Smoothing parse_smoothing(std::string_view name);

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

using TokenId = std::uint32_t;

class Vocabulary {
 public:
  static constexpr TokenId kUnkId = 0;
  static constexpr TokenId kBosId = 1;
  static constexpr TokenId kEosId = 2;

  Vocabulary();
  TokenId add(std::string_view word);
  // Unknown words and the reserved BOS/EOS spellings map to UNK.
  TokenId lookup(std::string_view word) const;
  const std::string& word(TokenId id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }
  bool contains(std::string_view word) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, TokenId> ids_;
};

struct NGramKeyHash {
  std::size_t operator()(const std::vector<TokenId>& key) const noexcept;
};

struct NGramEntry {
  double log2_prob = 0.0;
  double log2_backoff = 0.0;  // 0 = weight 1 (also used when h has no extensions)
};

using NGramTable = std::unordered_map<std::vector<TokenId>, NGramEntry, NGramKeyHash>;

struct TrainOptions {
  int order = 4;
  Smoothing smoothing = Smoothing::interpolated_modified_kneser_ney;
  // Free-form tag describing how the training text was prepared; persisted
  // in the model file so scorers can refuse mismatched preprocessing.
  std::string preprocessing = "none";
};

struct ScoredSequence {
  std::vector<std::string> tokens;
  double log2_prob = 0.0;
  double cross_entropy_bits_per_token = 0.0;
};

// Backoff n-gram model. Interpolated estimates are stored in backoff form:
// every observed n-gram carries its interpolated probability and every
// observed context carries the weight given to the lower order.
class NGramModel {
 public:
  NGramModel() = default;
  NGramModel(int order, Smoothing smoothing, Vocabulary vocabulary,
             std::vector<NGramTable> tables, std::string preprocessing);

  int order() const { return order_; }
  Smoothing smoothing() const { return smoothing_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const std::string& preprocessing() const { return preprocessing_; }
  // tables()[n - 1] holds the n-grams.
  const std::vector<NGramTable>& tables() const { return tables_; }

  // log2 p(word | context). Only the last order-1 context tokens are used.
  double log2_prob(std::span<const TokenId> context, TokenId word) const;
  double log2_prob(const std::vector<std::string>& context, std::string_view word) const;

  // Every predicted symbol (vocabulary minus BOS); the support of p(. | h).
  std::vector<TokenId> predictable() const;

  ScoredSequence score(std::string_view segment) const;
  ScoredSequence score_tokens(const std::vector<std::string>& tokens) const;

 private:
  int order_ = 0;
  Smoothing smoothing_ = Smoothing::witten_bell;
  Vocabulary vocab_;
  std::vector<NGramTable> tables_;
  std::string preprocessing_ = "none";
};

// Trains on whitespace-tokenized segments. Throws TrainingError on an empty
// corpus and ConfigError on an order outside [1, 5]. Kneser-Ney requests fall
// back to Witten-Bell when count-of-count statistics cannot yield valid
// discounts; the returned model's smoothing() reports what was used.
NGramModel train_lm(const std::vector<std::string>& corpus, const TrainOptions& options = {});

// Bits per predicted token; the EOS transition counts, BOS is context only.
double cross_entropy(const NGramModel& model, std::string_view segment);

struct CorpusScore {
  double total_bits = 0.0;
  std::size_t predicted_tokens = 0;
  double cross_entropy() const;
  double perplexity() const;
};
CorpusScore score_corpus(const NGramModel& model, const std::vector<std::string>& corpus);
double perplexity(const NGramModel& model, const std::vector<std::string>& corpus);

// ARPA layout with log2 values. Round trips exactly.
std::string to_arpa(const NGramModel& model);
NGramModel parse_arpa(std::string_view content);
void save_lm(const NGramModel& model, const std::filesystem::path& path);
NGramModel load_lm(const std::filesystem::path& path);

}  // namespace mtkit::lm
