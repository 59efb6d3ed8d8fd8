#include <iostream>
#include <memory>

#include "commands.hpp"
#include "io.hpp"
#include "mtkit/hash.hpp"
#include "mtkit/metrics.hpp"

namespace mtkit::cli {

namespace {

std::string fingerprint(const std::vector<std::string>& files) {
  std::string joined;
  for (const auto& f : files) joined += content_hash(read_input(f)) + ";";
  return content_hash(joined);
}

}  // namespace

void add_eval_commands(CLI::App& app) {
  auto* ev = app.add_subcommand("eval", "Corpus BLEU, chrF and paired bootstrap significance");
  ev->require_subcommand(1);

  struct ScoreOpts {
    std::string hyp, ref;
    metrics::ChrfOptions chrf;
  };
  auto bleu = std::make_shared<ScoreOpts>();
  auto* b = ev->add_subcommand("bleu", "Corpus BLEU on whitespace tokens");
  b->add_option("--hyp", bleu->hyp)->required();
  b->add_option("--ref", bleu->ref)->required();
  b->callback([bleu] {
    auto score = metrics::bleu_corpus(read_input_lines(bleu->hyp), read_input_lines(bleu->ref));
    std::cout << metrics::to_json(score, fingerprint({bleu->hyp, bleu->ref})) << '\n';
  });

  auto chrf = std::make_shared<ScoreOpts>();
  auto* c = ev->add_subcommand("chrf", "Corpus chrF over character n-grams");
  c->add_option("--hyp", chrf->hyp)->required();
  c->add_option("--ref", chrf->ref)->required();
  c->add_option("--char-order", chrf->chrf.char_order)->capture_default_str();
  c->add_option("--beta", chrf->chrf.beta)->capture_default_str();
  c->callback([chrf] {
    auto score = metrics::chrf_corpus(read_input_lines(chrf->hyp), read_input_lines(chrf->ref), chrf->chrf);
    std::cout << metrics::to_json(score, fingerprint({chrf->hyp, chrf->ref})) << '\n';
  });

  struct SignifOpts {
    std::string hyp_a, hyp_b, ref, metric = "bleu";
    std::size_t iterations = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
  };
  auto sig = std::make_shared<SignifOpts>();
  auto* s = ev->add_subcommand("signif", "Paired bootstrap resampling of system A against B");
  s->add_option("--hyp-a", sig->hyp_a)->required();
  s->add_option("--hyp-b", sig->hyp_b)->required();
  s->add_option("--ref", sig->ref)->required();
  s->add_option("--metric", sig->metric, "bleu or chrf")->capture_default_str();
  s->add_option("--iters", sig->iterations)->capture_default_str();
  s->add_option("--seed", sig->seed)->capture_default_str();
  s->add_option("--threads", sig->threads, "0 = all cores")->capture_default_str();
  s->callback([sig] {
    auto result = metrics::paired_bootstrap(read_input_lines(sig->hyp_a), read_input_lines(sig->hyp_b),
                                            read_input_lines(sig->ref), metrics::parse_metric(sig->metric),
                                            sig->iterations, sig->seed, sig->threads);
    std::cout << metrics::to_json(result, fingerprint({sig->hyp_a, sig->hyp_b, sig->ref})) << '\n';
  });
}

}  // namespace mtkit::cli
