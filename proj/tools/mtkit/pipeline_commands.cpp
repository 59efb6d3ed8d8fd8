#include <iostream>
#include <memory>

#include "commands.hpp"
#include "io.hpp"
#include "mtkit/gateway/backend.hpp"
#include "mtkit/pipeline/normalize.hpp"
#include "mtkit/pipeline/pipeline.hpp"
#include "mtkit/pipeline/sentence_splitter.hpp"
#include "mtkit/unicode.hpp"

namespace mtkit::cli {

namespace {

// Sentences of one line as the pipeline tokenizes them, with entities masked.
std::vector<std::vector<std::string>> tokenized_sentences(const std::string& line, Lang lang) {
  std::vector<std::vector<std::string>> out;
  auto masked = pipeline::mask_entities(pipeline::normalize_chars(line, lang),
                                        pipeline::Glossary::builtin());
  for (const auto& sentence : pipeline::split_sentences(masked.text, lang)) {
    out.push_back(pipeline::tokenize(sentence, lang));
  }
  return out;
}

}  // namespace

void add_pipeline_commands(CLI::App& app) {
  auto* pl = app.add_subcommand("pipeline", "Pre- and post-processing around a translation engine");
  pl->require_subcommand(1);

  struct RunOpts {
    std::string src = "de", tgt = "en", input, output;
    bool identity = false, preprocess_only = false;
    std::string backend, lexicon_table, truecaser, bpe, compound_lexicon, glossary;
  };
  auto run = std::make_shared<RunOpts>();
  auto* r = pl->add_subcommand("run", "Preprocess, translate with a local engine, postprocess");
  r->add_option("--src", run->src, "Source language")->capture_default_str();
  r->add_option("--tgt", run->tgt, "Target language")->capture_default_str();
  r->add_option("--input,-i", run->input, "Document (default stdin)");
  r->add_option("--output,-o", run->output);
  r->add_flag("--identity-backend", run->identity, "Use the identity engine");
  r->add_option("--backend", run->backend, "identity, token_reverse or lexicon");
  r->add_option("--lexicon-table", run->lexicon_table, "Substitutions for the lexicon engine");
  r->add_flag("--preprocess-only", run->preprocess_only, "Print the MT-ready lines");
  r->add_option("--truecaser", run->truecaser, "Source truecase model");
  r->add_option("--bpe", run->bpe, "BPE model");
  r->add_option("--compound-lexicon", run->compound_lexicon, "German word frequencies");
  r->add_option("--glossary", run->glossary, "Do-not-translate terms, one per line");
  r->callback([run] {
    LanguagePair pair{lang_from_string(run->src), lang_from_string(run->tgt)};
    pipeline::PipelineModels models;
    pipeline::Glossary glossary;
    if (!run->glossary.empty()) {
      glossary = pipeline::Glossary::load(run->glossary);
      models.glossary = &glossary;
    }
    if (!run->truecaser.empty()) {
      models.source_truecaser = std::make_shared<pipeline::TruecaseModel>(pipeline::load_truecaser(run->truecaser));
    }
    if (!run->bpe.empty()) models.bpe = std::make_shared<bpe::BpeModel>(bpe::load_bpe(run->bpe));
    if (!run->compound_lexicon.empty()) {
      models.compound_lexicon = std::make_shared<pipeline::CompoundLexicon>(
          pipeline::CompoundLexicon::load(run->compound_lexicon));
    }
    std::string text = read_input(run->input);
    bool trailing_newline = !text.empty() && text.back() == '\n';
    if (trailing_newline) text.pop_back();
    auto pre = pipeline::preprocess(text, pair, models);
    if (run->preprocess_only) {
      write_output_lines(run->output, pre.lines);
      return;
    }
    std::string mode = run->identity ? "identity" : (run->backend.empty() ? "identity" : run->backend);
    gateway::SubstitutionTable table;
    if (!run->lexicon_table.empty()) table = gateway::load_substitution_table(run->lexicon_table);
    auto engine = gateway::make_mock_backend(gateway::parse_mock_mode(mode), table);
    auto translated = pre.lines.empty() ? std::vector<std::string>{} : engine->translate(pre.lines, pair);
    std::string out = pipeline::postprocess(translated, pre.state, models);
    if (trailing_newline) out += '\n';
    write_output(run->output, out);
  });

  struct TrainOpts {
    std::string lang = "en", input, output;
  };
  auto tc = std::make_shared<TrainOpts>();
  auto* t = pl->add_subcommand("train-truecaser", "Count token casings in running text");
  t->add_option("--lang", tc->lang)->capture_default_str();
  t->add_option("--input,-i", tc->input);
  t->add_option("--output,-o", tc->output);
  t->callback([tc] {
    Lang lang = lang_from_string(tc->lang);
    std::vector<std::vector<std::string>> sentences;
    for (const auto& line : read_input_lines(tc->input)) {
      for (auto& s : tokenized_sentences(line, lang)) sentences.push_back(std::move(s));
    }
    write_output(tc->output, pipeline::train_truecaser(sentences).to_text());
  });

  auto lex = std::make_shared<TrainOpts>();
  lex->lang = "de";
  auto* x = pl->add_subcommand("train-lexicon", "Word frequencies for the compound splitter");
  x->add_option("--lang", lex->lang)->capture_default_str();
  x->add_option("--input,-i", lex->input);
  x->add_option("--output,-o", lex->output);
  x->callback([lex] {
    Lang lang = lang_from_string(lex->lang);
    std::vector<std::string> lines;
    for (const auto& line : read_input_lines(lex->input)) {
      for (const auto& s : tokenized_sentences(line, lang)) lines.push_back(unicode::join(s, " "));
    }
    write_output(lex->output, pipeline::CompoundLexicon::from_corpus(lines).to_text());
  });
}

}  // namespace mtkit::cli
