#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mtkit/language.hpp"

namespace mtkit::gateway {

struct TrainingConfig {
  LanguagePair pair{Lang::de, Lang::en};
  int enc_layers = 6;
  int dec_layers = 6;
  double dropout = 0.1;
  std::string optimizer = "adam";
  double learning_rate = 0.0003;
  bool warmup = true;
  int mini_batch = 64;
  int beam_size = 12;
  int bpe_merges = 32000;
  bool tied_embeddings = true;
  std::vector<std::string> validation_metrics{"cross-entropy", "perplexity", "BLEU"};
  std::string early_stopping = "cross-entropy";
  std::string model_selection = "BLEU";

  friend bool operator==(const TrainingConfig&, const TrainingConfig&) = default;
};

// Field names accepted by overrides, in document order.
const std::vector<std::string>& training_config_fields();

// Defaults with `overrides` (field -> value text) applied. Throws
// ConfigError on unknown fields or unparsable values.
TrainingConfig emit_training_config(LanguagePair pair,
                                    const std::map<std::string, std::string>& overrides = {});

// "key: value" lines under a provenance comment; lists as "[a, b]".
std::string to_text(const TrainingConfig& config);
TrainingConfig parse_training_config(std::string_view text);

}  // namespace mtkit::gateway
