#include <iostream>
#include <memory>

#include "commands.hpp"
#include "io.hpp"
#include "mtkit/data_selection.hpp"
#include "mtkit/errors.hpp"

namespace mtkit::cli {

namespace {

struct QuadOpts {
  std::string in_src, out_src, in_tgt, out_tgt;
  std::string src, tgt, tsv, langs = "it-en";
  unsigned threads = 0;
};

void add_quad_options(CLI::App* cmd, QuadOpts& o) {
  cmd->add_option("--in-src", o.in_src, "In-domain source LM")->required();
  cmd->add_option("--out-src", o.out_src, "Out-of-domain source LM")->required();
  cmd->add_option("--in-tgt", o.in_tgt, "In-domain target LM")->required();
  cmd->add_option("--out-tgt", o.out_tgt, "Out-of-domain target LM")->required();
  cmd->add_option("--src", o.src, "Candidate source side");
  cmd->add_option("--tgt", o.tgt, "Candidate target side");
  cmd->add_option("--tsv", o.tsv, "Candidate corpus as TSV");
  cmd->add_option("--langs", o.langs)->capture_default_str();
  cmd->add_option("--threads", o.threads, "0 = all cores")->capture_default_str();
}

selection::LmQuad load_quad(const QuadOpts& o) {
  auto quad = selection::LmQuad::load(pair_from_string(o.langs), o.in_src, o.out_src, o.in_tgt,
                                      o.out_tgt);
  quad.validate();
  return quad;
}

// "SRC:TGT" file pair.
std::pair<std::string, std::string> split_pair_arg(const std::string& arg) {
  auto colon = arg.find(':');
  if (colon == std::string::npos) throw ConfigError("expected SRC:TGT, got '" + arg + "'");
  return {arg.substr(0, colon), arg.substr(colon + 1)};
}

}  // namespace

void add_select_commands(CLI::App& app) {
  auto* sel = app.add_subcommand("select", "Cross-entropy-difference data selection");
  sel->require_subcommand(1);

  struct ScoreOpts {
    QuadOpts quad;
    std::string output;
  };
  auto score = std::make_shared<ScoreOpts>();
  auto* s = sel->add_subcommand("score", "Score every candidate pair");
  add_quad_options(s, score->quad);
  s->add_option("--output,-o", score->output, "Score table TSV (default stdout)");
  s->callback([score] {
    auto quad = load_quad(score->quad);
    auto corpus = load_corpus(score->quad.src, score->quad.tgt, score->quad.tsv, score->quad.langs);
    write_output(score->output, selection::scores_to_tsv(selection::score_corpus(corpus, quad, score->quad.threads)));
  });

  struct TopOpts {
    QuadOpts quad;
    std::size_t n = 0;
    std::string out_src, out_tgt, out_tsv, scores;
  };
  auto top = std::make_shared<TopOpts>();
  auto* t = sel->add_subcommand("top", "Keep the n lowest-scoring pairs");
  add_quad_options(t, top->quad);
  t->add_option("-n", top->n, "Pairs to keep")->required();
  t->add_option("--select-src", top->out_src, "Selected source side");
  t->add_option("--select-tgt", top->out_tgt, "Selected target side");
  t->add_option("--select-tsv", top->out_tsv, "Selected pairs as TSV");
  t->add_option("--scores", top->scores, "Also write the full score table");
  t->callback([top] {
    auto quad = load_quad(top->quad);
    auto corpus = load_corpus(top->quad.src, top->quad.tgt, top->quad.tsv, top->quad.langs);
    auto result = selection::select_top(corpus, quad, top->n, top->quad.threads);
    save_corpus(result.selected, top->out_src, top->out_tgt, top->out_tsv);
    if (!top->scores.empty()) write_output(top->scores, selection::scores_to_tsv(result.scores));
    std::cerr << "selected " << result.selected.size() << " of " << corpus.size() << " pairs\n";
  });

  struct CopyOpts {
    std::string input, provenance = "copied", langs = "it-en", out_src, out_tgt, out_tsv;
  };
  auto copy = std::make_shared<CopyOpts>();
  auto* c = sel->add_subcommand("copy-augment", "Pair target-language text with a copy of itself");
  c->add_option("--input,-i", copy->input, "Monolingual target-language text (default stdin)");
  c->add_option("--provenance", copy->provenance)->capture_default_str();
  c->add_option("--langs", copy->langs, "Pair the copies will augment")->capture_default_str();
  c->add_option("--out-src", copy->out_src);
  c->add_option("--out-tgt", copy->out_tgt);
  c->add_option("--out-tsv", copy->out_tsv);
  c->callback([copy] {
    std::vector<corpus::Segment> mono;
    for (const auto& line : read_input_lines(copy->input)) mono.emplace_back(line);
    auto out = selection::copy_augment(mono, copy->provenance, pair_from_string(copy->langs));
    save_corpus(out, copy->out_src, copy->out_tgt, copy->out_tsv);
  });

  struct BuildOpts {
    std::string base_src, base_tgt, langs = "it-en", out_src, out_tgt, out_tsv;
    std::vector<std::string> add, add_copied;
    std::uint64_t seed = 0;
  };
  auto build = std::make_shared<BuildOpts>();
  auto* b = sel->add_subcommand("build", "Concatenate base and additions, then shuffle with a seed");
  b->add_option("--base-src", build->base_src)->required();
  b->add_option("--base-tgt", build->base_tgt)->required();
  b->add_option("--langs", build->langs)->capture_default_str();
  b->add_option("--add", build->add, "Additional corpus as SRC:TGT (repeatable)");
  b->add_option("--add-copied", build->add_copied, "Copy-augmented corpus as SRC:TGT");
  b->add_option("--seed", build->seed)->capture_default_str();
  b->add_option("--out-src", build->out_src);
  b->add_option("--out-tgt", build->out_tgt);
  b->add_option("--out-tsv", build->out_tsv);
  b->callback([build] {
    auto base = load_corpus(build->base_src, build->base_tgt, "", build->langs, "base");
    std::vector<corpus::ParallelCorpus> additions;
    for (const auto& a : build->add) {
      auto [s, t] = split_pair_arg(a);
      additions.push_back(load_corpus(s, t, "", build->langs, s));
    }
    for (const auto& a : build->add_copied) {
      auto [s, t] = split_pair_arg(a);
      auto c = load_corpus(s, t, "", build->langs, s);
      c.copied = true;
      additions.push_back(std::move(c));
    }
    auto out = selection::build_finetune_set(base, additions, build->seed);
    save_corpus(out, build->out_src, build->out_tgt, build->out_tsv);
    std::cerr << "built " << out.size() << " pairs\n";
  });
}

}  // namespace mtkit::cli
