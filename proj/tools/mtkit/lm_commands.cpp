#include <cstdio>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "io.hpp"
#include "mtkit/data_selection.hpp"
#include "mtkit/errors.hpp"
#include "mtkit/ngram_lm.hpp"

namespace mtkit::cli {

void add_lm_commands(CLI::App& app) {
  auto* lm = app.add_subcommand("lm", "Train and query n-gram language models");
  lm->require_subcommand(1);

  struct TrainOpts {
    std::string input, output, smoothing = "kn", lang;
    int order = 4;
  };
  auto train = std::make_shared<TrainOpts>();
  auto* t = lm->add_subcommand("train", "Train a smoothed n-gram model");
  t->add_option("--input,-i", train->input, "Training text (default stdin)");
  t->add_option("--output,-o", train->output, "Model file (default stdout)");
  t->add_option("--order", train->order)->capture_default_str();
  t->add_option("--smoothing", train->smoothing, "kn or wb")->capture_default_str();
  t->add_option("--lang", train->lang,
                "Normalize, tokenize and lower-case as for data selection");
  t->callback([train] {
    auto lines = read_input_lines(train->input);
    lm::NGramModel model;
    if (!train->lang.empty()) {
      model = selection::train_selection_lm(lines, lang_from_string(train->lang), train->order,
                                            lm::parse_smoothing(train->smoothing));
    } else {
      lm::TrainOptions options;
      options.order = train->order;
      options.smoothing = lm::parse_smoothing(train->smoothing);
      model = lm::train_lm(lines, options);
    }
    if (model.smoothing() != lm::parse_smoothing(train->smoothing)) {
      std::cerr << "note: count-of-count statistics are degenerate; trained with "
                << lm::to_string(model.smoothing()) << '\n';
    }
    write_output(train->output, lm::to_arpa(model));
  });

  struct ScoreOpts {
    std::string model, input;
  };
  auto score = std::make_shared<ScoreOpts>();
  auto* s = lm->add_subcommand("score", "Bits per token for every line, corpus perplexity on stderr");
  s->add_option("--model,-m", score->model)->required();
  s->add_option("--input,-i", score->input, "Text to score (default stdin)");
  s->callback([score] {
    auto model = lm::load_lm(score->model);
    auto lines = read_input_lines(score->input);
    const std::string& tag = model.preprocessing();
    if (tag.starts_with("tok-lc:")) {
      Lang lang = lang_from_string(tag.substr(7));
      for (auto& l : lines) l = selection::prepare_for_lm(l, lang);
    }
    std::string out;
    char buf[64];
    for (const auto& l : lines) {
      std::snprintf(buf, sizeof buf, "%.6f\n", lm::cross_entropy(model, l));
      out += buf;
    }
    std::cout << out;
    auto total = lm::score_corpus(model, lines);
    std::fprintf(stderr, "cross-entropy %.6f bits/token, perplexity %.6f over %zu tokens\n",
                 total.cross_entropy(), total.perplexity(), total.predicted_tokens);
  });
}

}  // namespace mtkit::cli
