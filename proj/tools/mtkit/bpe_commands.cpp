#include <iostream>
#include <memory>

#include "commands.hpp"
#include "io.hpp"
#include "mtkit/bpe.hpp"

namespace mtkit::cli {

void add_bpe_commands(CLI::App& app) {
  auto* bpe = app.add_subcommand("bpe", "Byte-pair-encoding subword segmentation");
  bpe->require_subcommand(1);

  struct LearnOpts {
    std::vector<std::string> inputs;
    std::string output;
    bpe::LearnOptions options;
  };
  auto learn = std::make_shared<LearnOpts>();
  auto* l = bpe->add_subcommand("learn", "Learn a joint model over tokenized corpora");
  l->add_option("--input,-i", learn->inputs, "Tokenized text, repeat for each side")->required();
  l->add_option("-n,--merges", learn->options.num_merges)->capture_default_str();
  l->add_option("--min-frequency", learn->options.min_frequency)->capture_default_str();
  l->add_option("--output,-o", learn->output, "Model file (default stdout)");
  l->callback([learn] {
    std::vector<std::vector<std::string>> corpora;
    for (const auto& p : learn->inputs) corpora.push_back(read_input_lines(p));
    auto model = bpe::learn_bpe(corpora, learn->options);
    write_output(learn->output, model.to_text());
    std::cerr << "learned " << model.num_merges() << " merges\n";
  });

  struct ApplyOpts {
    std::string model, input, output;
  };
  auto apply = std::make_shared<ApplyOpts>();
  auto* a = bpe->add_subcommand("apply", "Segment tokenized text");
  a->add_option("--model,-m", apply->model)->required();
  a->add_option("--input,-i", apply->input);
  a->add_option("--output,-o", apply->output);
  a->callback([apply] {
    auto model = bpe::load_bpe(apply->model);
    std::vector<std::string> out;
    for (const auto& line : read_input_lines(apply->input)) out.push_back(model.apply(line));
    write_output_lines(apply->output, out);
  });

  struct UndoOpts {
    std::string input, output, separator = std::string(bpe::kDefaultSeparator);
  };
  auto undo = std::make_shared<UndoOpts>();
  auto* u = bpe->add_subcommand("undo", "Join subword units back into tokens");
  u->add_option("--input,-i", undo->input);
  u->add_option("--output,-o", undo->output);
  u->add_option("--separator", undo->separator)->capture_default_str();
  u->callback([undo] {
    std::vector<std::string> out;
    for (const auto& line : read_input_lines(undo->input)) out.push_back(bpe::undo_bpe(line, undo->separator));
    write_output_lines(undo->output, out);
  });
}

}  // namespace mtkit::cli
