#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mtkit/corpus.hpp"
#include "mtkit/language.hpp"
#include "mtkit/ngram_lm.hpp"

namespace mtkit::selection {

// The single text preparation used for both LM training and scoring:
// character normalization, pipeline tokenization, lower-casing.
std::string prepare_for_lm(std::string_view text, Lang lang);
// Model-file tag recording that preparation, e.g. "tok-lc:de".
std::string preprocessing_tag(Lang lang);

lm::NGramModel train_selection_lm(const std::vector<std::string>& texts, Lang lang,
                                  int order = 4,
                                  lm::Smoothing smoothing =
                                      lm::Smoothing::interpolated_modified_kneser_ney);

struct LmQuad {
  LanguagePair langs;
  std::shared_ptr<const lm::NGramModel> in_src;
  std::shared_ptr<const lm::NGramModel> out_src;
  std::shared_ptr<const lm::NGramModel> in_tgt;
  std::shared_ptr<const lm::NGramModel> out_tgt;

  // Throws ConfigError when a model is missing or was prepared for another
  // language. Untagged models ("none") pass only when allowed.
  void validate(bool allow_untagged = false) const;
  static LmQuad load(LanguagePair langs, const std::filesystem::path& in_src,
                     const std::filesystem::path& out_src, const std::filesystem::path& in_tgt,
                     const std::filesystem::path& out_tgt);
};

struct SelectionScore {
  std::size_t pair_index = 0;
  double h_in_src = 0;
  double h_out_src = 0;
  double h_in_tgt = 0;
  double h_out_tgt = 0;
  double score = 0;
};

// H_in(s) - H_out(s) on already prepared text.
double score_monolingual(std::string_view prepared, const lm::NGramModel& in_model,
                         const lm::NGramModel& out_model);

// Throws ConfigError when `langs` differ from the quad's languages.
SelectionScore score_bilingual(const corpus::SegmentPair& pair, LanguagePair langs,
                               const LmQuad& quad, std::size_t index = 0);

// Scores every pair; threads == 0 uses the hardware concurrency. The result
// is in corpus order regardless of scheduling.
std::vector<SelectionScore> score_corpus(const corpus::ParallelCorpus& corpus, const LmQuad& quad,
                                         unsigned threads = 0);

// Indices of the n lowest scores, ascending by (score, index).
std::vector<std::size_t> rank_lowest(const std::vector<SelectionScore>& scores, std::size_t n);

struct Selection {
  corpus::ParallelCorpus selected;
  std::vector<SelectionScore> scores;  // full table, corpus order
};

Selection select_top(const corpus::ParallelCorpus& corpus, const LmQuad& quad, std::size_t n,
                     unsigned threads = 0);

// TSV with header: index, the four H components, score.
std::string scores_to_tsv(const std::vector<SelectionScore>& scores);
std::vector<SelectionScore> scores_from_tsv(std::string_view content);

// Synthetic pairs whose source is a copy of the target segment. The result
// is flagged as copied and carries `langs` as the pair it will augment.
corpus::ParallelCorpus copy_augment(const std::vector<corpus::Segment>& mono_target,
                                    const std::string& provenance, LanguagePair langs);

// Concatenation of base and additions followed by a seeded Fisher-Yates
// shuffle. Throws ConfigError on a language-pair mismatch; copied corpora
// only need the target language to match.
corpus::ParallelCorpus build_finetune_set(const corpus::ParallelCorpus& base,
                                          const std::vector<corpus::ParallelCorpus>& additions,
                                          std::uint64_t seed);

// Uniform integer in [0, bound) by rejection sampling on a 64-bit stream;
// portable, unlike std::uniform_int_distribution.
template <typename Engine>
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  while (true) {
    std::uint64_t x = engine();
    if (x < limit) return x % bound;
  }
}

}  // namespace mtkit::selection
