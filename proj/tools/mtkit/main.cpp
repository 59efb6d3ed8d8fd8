#include <iostream>

#include "commands.hpp"
#include "mtkit/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mtkit: corpus, language-model, subword, metric, pipeline and serving tools"};
  app.require_subcommand(1);
  mtkit::cli::add_corpus_commands(app);
  mtkit::cli::add_lm_commands(app);
  mtkit::cli::add_select_commands(app);
  mtkit::cli::add_bpe_commands(app);
  mtkit::cli::add_eval_commands(app);
  mtkit::cli::add_pipeline_commands(app);
  mtkit::cli::add_serve_commands(app);
  mtkit::cli::add_recipe_commands(app);
  mtkit::cli::add_config_commands(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const mtkit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return mtkit::cli::exit_code;
}
