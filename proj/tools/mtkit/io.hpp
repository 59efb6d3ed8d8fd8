#pragma once

#include <string>
#include <vector>

#include "mtkit/corpus.hpp"

namespace mtkit::cli {

// Empty path or "-" means stdin / stdout.
std::string read_input(const std::string& path);
std::vector<std::string> read_input_lines(const std::string& path);
void write_output(const std::string& path, const std::string& content);
void write_output_lines(const std::string& path, const std::vector<std::string>& lines);

// Parallel corpus from --src/--tgt or --tsv.
corpus::ParallelCorpus load_corpus(const std::string& src, const std::string& tgt,
                                   const std::string& tsv, const std::string& langs,
                                   const std::string& provenance = "corpus");
void save_corpus(const corpus::ParallelCorpus& corpus, const std::string& src,
                 const std::string& tgt, const std::string& tsv);

}  // namespace mtkit::cli
