#include "mtkit/pipeline/pipeline.hpp"

#include "mtkit/pipeline/normalize.hpp"
#include "mtkit/pipeline/sentence_splitter.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::pipeline {

namespace {

std::vector<std::string> split_paragraphs(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

std::vector<std::string> tokens_of(std::string_view line) {
  std::vector<std::string> out;
  for (auto tok : unicode::split_whitespace(line)) out.emplace_back(tok);
  return out;
}

// The tokens handed to the translation engine, before BPE: what the
// identity backend gives back after BPE undo.
std::vector<std::string> engine_tokens(const SentenceRecord& record, const PipelineState& state,
                                       const PipelineModels& models) {
  std::vector<std::string> tokens;
  for (const auto& tok : record.source.tokens) {
    if (state.compounds_split && models.compound_lexicon && !is_placeholder(tok)) {
      auto parts = split_compound(tok, *models.compound_lexicon);
      tokens.insert(tokens.end(), parts.begin(), parts.end());
    } else {
      tokens.push_back(tok);
    }
  }
  return tokens;
}

}  // namespace

std::vector<std::string> identity_spellcheck(std::vector<std::string> tokens, Lang) {
  return tokens;
}

Preprocessed preprocess(std::string_view text, LanguagePair langs, const PipelineModels& models,
                        std::string document_id) {
  const Lang src = langs.source;
  const PrefixList& prefixes = PrefixList::builtin(src);
  Preprocessed result;
  PipelineState& state = result.state;
  state.langs = langs;
  state.compounds_split = src == Lang::de && models.compound_lexicon != nullptr;
  state.truecased = models.source_truecaser != nullptr;
  state.segmented = models.bpe != nullptr;

  std::string normalized = normalize_chars(text, src, *models.normalization);
  MaskedText masked = mask_entities(normalized, *models.glossary, std::move(document_id));
  state.placeholder_map = std::move(masked.map);

  for (const auto& paragraph : split_paragraphs(masked.text)) {
    state.sentence_boundaries.push_back(state.sentences.size());
    for (const auto& sentence : split_sentences(paragraph, prefixes)) {
      SentenceRecord record;
      record.source = tokenize_with_spacing(sentence, src, prefixes);
      std::vector<std::string> tokens = engine_tokens(record, state, models);
      if (state.truecased) {
        if (auto first = first_cased_token(tokens)) {
          record.casing.index = *first;
          record.casing.original = tokens[*first];
          tokens = recase(std::move(tokens), *models.source_truecaser, CaseDirection::truecase);
          record.casing.recased = tokens[*first];
        }
      }
      if (models.spellcheck) tokens = models.spellcheck(std::move(tokens), src);
      std::string line;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) line += ' ';
        if (models.bpe && !is_placeholder(tokens[i])) {
          line += models.bpe->apply_token(tokens[i]);
        } else {
          line += tokens[i];
        }
      }
      result.lines.push_back(std::move(line));
      state.sentences.push_back(std::move(record));
    }
  }
  state.sentence_boundaries.push_back(state.sentences.size());
  return result;
}

std::string postprocess(const std::vector<std::string>& translated, const PipelineState& state,
                        const PipelineModels& models) {
  if (translated.size() != state.sentences.size()) {
    throw PipelineError("expected " + std::to_string(state.sentences.size()) +
                        " translated lines, got " + std::to_string(translated.size()));
  }
  const Lang tgt = state.langs.target;
  const std::string separator = models.bpe ? models.bpe->separator() : std::string(bpe::kDefaultSeparator);
  const bool rejoin = tgt == Lang::de || state.compounds_split;

  std::vector<std::string> sentences;
  sentences.reserve(translated.size());
  for (std::size_t s = 0; s < translated.size(); ++s) {
    const SentenceRecord& record = state.sentences[s];
    std::string line = state.segmented ? bpe::undo_bpe(translated[s], separator) : translated[s];
    std::vector<std::string> tokens = tokens_of(line);

    if (state.truecased) {
      const CasingDecision& casing = record.casing;
      auto first = first_cased_token(tokens);
      if (casing.index && first && *first == *casing.index && tokens[*first] == casing.recased) {
        tokens[*first] = casing.original;
      } else {
        tokens = recase(std::move(tokens), TruecaseModel{}, CaseDirection::detruecase);
      }
    }
    if (rejoin) tokens = rejoin_compounds(tokens);

    if (tokens == record.source.tokens) {
      sentences.push_back(join_with_spacing(record.source));
    } else {
      sentences.push_back(detokenize(tokens, tgt, &state.placeholder_map));
    }
  }

  std::string masked;
  for (std::size_t p = 0; p + 1 < state.sentence_boundaries.size(); ++p) {
    if (p > 0) masked += '\n';
    for (std::size_t s = state.sentence_boundaries[p]; s < state.sentence_boundaries[p + 1]; ++s) {
      if (s > state.sentence_boundaries[p]) masked += ' ';
      masked += sentences[s];
    }
  }
  return unmask_entities(masked, state.placeholder_map);
}

}  // namespace mtkit::pipeline
