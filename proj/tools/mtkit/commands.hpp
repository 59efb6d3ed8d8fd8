#pragma once

#include <CLI11.hpp>

namespace mtkit::cli {

// Set by commands that report a non-error condition through the status.
inline int exit_code = 0;

void add_corpus_commands(CLI::App& app);
void add_lm_commands(CLI::App& app);
void add_select_commands(CLI::App& app);
void add_bpe_commands(CLI::App& app);
void add_eval_commands(CLI::App& app);
void add_pipeline_commands(CLI::App& app);
void add_serve_commands(CLI::App& app);
void add_recipe_commands(CLI::App& app);
void add_config_commands(CLI::App& app);

}  // namespace mtkit::cli
