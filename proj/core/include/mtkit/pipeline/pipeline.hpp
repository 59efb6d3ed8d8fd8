#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtkit/bpe.hpp"
#include "mtkit/errors.hpp"
#include "mtkit/language.hpp"
#include "mtkit/pipeline/compound.hpp"
#include "mtkit/pipeline/masking.hpp"
#include "mtkit/pipeline/resources.hpp"
#include "mtkit/pipeline/tokenizer.hpp"
#include "mtkit/pipeline/truecaser.hpp"

namespace mtkit::pipeline {

// Receives the tokens of one sentence after truecasing, before BPE.
using SpellcheckHook =
    std::function<std::vector<std::string>(std::vector<std::string> tokens, Lang lang)>;

// The default hook: returns its input.
std::vector<std::string> identity_spellcheck(std::vector<std::string> tokens, Lang lang);

// Shared, immutable resources for one language pair. Missing optional models
// disable their stage.
struct PipelineModels {
  const NormalizationTable* normalization = &NormalizationTable::builtin();
  const Glossary* glossary = &Glossary::builtin();
  std::shared_ptr<const TruecaseModel> source_truecaser;
  std::shared_ptr<const bpe::BpeModel> bpe;
  // Used when the source language is German.
  std::shared_ptr<const CompoundLexicon> compound_lexicon;
  SpellcheckHook spellcheck = identity_spellcheck;
};

struct CasingDecision {
  std::optional<std::size_t> index;  // token that was recased
  std::string original;
  std::string recased;
};

struct SentenceRecord {
  TokenizedSentence source;  // tokens and spacing straight from the tokenizer
  CasingDecision casing;
};

// Everything postprocess needs to invert preprocess for one document.
struct PipelineState {
  LanguagePair langs;
  PlaceholderMap placeholder_map;
  // sentence_boundaries[p]: index of the first sentence of paragraph p;
  // a final entry holds the sentence count.
  std::vector<std::size_t> sentence_boundaries;
  std::vector<SentenceRecord> sentences;
  bool compounds_split = false;
  bool truecased = false;
  bool segmented = false;
};

struct Preprocessed {
  std::vector<std::string> lines;  // one MT-ready line per sentence
  PipelineState state;
};

class PipelineError : public Error {
 public:
  using Error::Error;
};

// normalize -> mask -> sentence split -> tokenize -> compound split (German
// source) -> truecase -> spellcheck -> BPE.
Preprocessed preprocess(std::string_view text, LanguagePair langs, const PipelineModels& models,
                        std::string document_id = {});

// BPE undo -> detruecase -> compound rejoin (German target, or wherever the
// source was split) -> detokenize -> join sentences -> unmask. A translated
// sentence whose tokens equal the preprocessed ones is restored with the
// recorded spacing and casing. Throws PipelineError when the line count
// differs from the preprocessed one, ReinstatementError on orphan
// placeholders.
std::string postprocess(const std::vector<std::string>& translated, const PipelineState& state,
                        const PipelineModels& models);

}  // namespace mtkit::pipeline
