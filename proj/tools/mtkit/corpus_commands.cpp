#include <iostream>
#include <memory>

#include "commands.hpp"
#include "io.hpp"
#include "mtkit/corpus.hpp"

namespace mtkit::cli {

namespace {

struct CorpusInput {
  std::string src, tgt, tsv, langs = "de-en";
};

void add_input_options(CLI::App* cmd, CorpusInput& in) {
  cmd->add_option("--src", in.src, "Source-side file (one segment per line)");
  cmd->add_option("--tgt", in.tgt, "Target-side file");
  cmd->add_option("--tsv", in.tsv, "Two-column TSV instead of --src/--tgt");
  cmd->add_option("--langs", in.langs, "Language pair, e.g. de-en")->capture_default_str();
}

}  // namespace

void add_corpus_commands(CLI::App& app) {
  auto* corpus = app.add_subcommand("corpus", "Load, clean and describe parallel corpora");
  corpus->require_subcommand(1);

  struct CleanOpts {
    CorpusInput in;
    corpus::CleaningConfig config;
    std::string out_src, out_tgt, out_tsv, report, provenance = "corpus";
  };
  auto clean = std::make_shared<CleanOpts>();
  auto* c = corpus->add_subcommand("clean", "Filter empty, short, long, unbalanced and duplicate pairs");
  add_input_options(c, clean->in);
  c->add_option("--min-tokens", clean->config.min_tokens)->capture_default_str();
  c->add_option("--max-tokens", clean->config.max_tokens)->capture_default_str();
  c->add_option("--max-ratio", clean->config.max_length_ratio)->capture_default_str();
  c->add_flag("--dedup", clean->config.drop_duplicates, "Drop repeated (source, target) pairs");
  c->add_option("--out-src", clean->out_src);
  c->add_option("--out-tgt", clean->out_tgt);
  c->add_option("--out-tsv", clean->out_tsv);
  c->add_option("--report", clean->report, "Write the cleaning report as JSON");
  c->add_option("--provenance", clean->provenance)->capture_default_str();
  c->callback([clean] {
    clean->config.validate();
    auto input = load_corpus(clean->in.src, clean->in.tgt, clean->in.tsv, clean->in.langs,
                             clean->provenance);
    auto [kept, report] = corpus::clean(input, clean->config);
    save_corpus(kept, clean->out_src, clean->out_tgt, clean->out_tsv);
    if (!clean->report.empty()) write_output(clean->report, report.to_json() + "\n");
    std::cerr << report.to_table();
  });

  auto stats = std::make_shared<CorpusInput>();
  auto* s = corpus->add_subcommand("stats", "Segment and word counts per side");
  add_input_options(s, *stats);
  s->callback([stats] {
    auto input = load_corpus(stats->src, stats->tgt, stats->tsv, stats->langs);
    auto st = corpus::corpus_stats(input);
    std::cout << st.header() << '\n' << st.row() << '\n';
  });
}

}  // namespace mtkit::cli
