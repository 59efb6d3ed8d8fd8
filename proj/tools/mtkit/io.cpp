#include "io.hpp"

#include <iostream>
#include <iterator>

#include "mtkit/errors.hpp"
#include "mtkit/text_io.hpp"

namespace mtkit::cli {

namespace {

bool is_std(const std::string& path) { return path.empty() || path == "-"; }

}  // namespace

std::string read_input(const std::string& path) {
  if (!is_std(path)) return read_file(path);
  return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
}

std::vector<std::string> read_input_lines(const std::string& path) {
  if (!is_std(path)) return read_lines(path);
  return split_lines(read_input(path));
}

void write_output(const std::string& path, const std::string& content) {
  if (is_std(path)) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  write_file(path, content);
}

void write_output_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::string content;
  for (const auto& l : lines) content += l + '\n';
  write_output(path, content);
}

corpus::ParallelCorpus load_corpus(const std::string& src, const std::string& tgt,
                                   const std::string& tsv, const std::string& langs,
                                   const std::string& provenance) {
  LanguagePair pair = pair_from_string(langs);
  if (!tsv.empty()) {
    return corpus::load_parallel(corpus::CorpusLocation::tsv(tsv), pair, provenance);
  }
  if (src.empty() || tgt.empty()) throw ConfigError("give --src and --tgt, or --tsv");
  return corpus::load_parallel(corpus::CorpusLocation::dual(src, tgt), pair, provenance);
}

void save_corpus(const corpus::ParallelCorpus& corpus, const std::string& src,
                 const std::string& tgt, const std::string& tsv) {
  if (!tsv.empty()) {
    corpus::save_parallel(corpus, corpus::CorpusLocation::tsv(tsv));
    return;
  }
  if (src.empty() || tgt.empty()) throw ConfigError("give --out-src and --out-tgt, or --out-tsv");
  corpus::save_parallel(corpus, corpus::CorpusLocation::dual(src, tgt));
}

}  // namespace mtkit::cli
