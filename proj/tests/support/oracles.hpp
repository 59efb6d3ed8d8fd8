#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mtkit/ngram_lm.hpp"

// Slow, direct re-implementations used as test oracles. None of these share
// code with the library beyond its public types.
namespace mtkit::testing {

std::vector<std::string> words_of(const std::string& line);
std::vector<std::string> code_points_of(const std::string& text);

struct OracleBleu {
  double score = 0;
  std::array<double, 4> precisions{};
  double brevity_penalty = 1;
  std::array<std::size_t, 4> matches{};
  std::array<std::size_t, 4> hyp_total{};
};

// Enumerates every n-gram position and clips by scanning.
OracleBleu oracle_bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs);
double oracle_chrf(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                   int order = 6, double beta = 2.0);

// Every history (up to order - 1 tokens, "<s>" padded) that precedes a
// predicted token somewhere in the corpus.
std::vector<std::vector<std::string>> observed_contexts(const std::vector<std::string>& corpus,
                                                        int order);
// Sum of p(w | context) over the model's predictable symbols.
double probability_mass(const lm::NGramModel& model, const std::vector<std::string>& context);

// Interpolated Witten-Bell computed recursively from raw counts.
class WittenBellOracle {
 public:
  WittenBellOracle(const std::vector<std::string>& corpus, int order);
  double prob(std::vector<std::string> context, const std::string& word) const;

 private:
  int order_;
  std::size_t predictable_ = 0;
  std::map<std::vector<std::string>, double> counts_;
  std::map<std::vector<std::string>, std::pair<double, double>> contexts_;  // total, types
};

// Adjacent symbol pair counts, found by walking every word.
using Split = std::vector<std::string>;
std::map<std::pair<std::string, std::string>, std::size_t> count_pairs(
    const std::vector<std::pair<Split, std::size_t>>& words);

// Words with counts split into characters, the last one carrying "</w>".
std::vector<std::pair<Split, std::size_t>> initial_splits(const std::vector<std::string>& lines);
void apply_merge(std::vector<std::pair<Split, std::size_t>>& words,
                 const std::pair<std::string, std::string>& merge);

}  // namespace mtkit::testing
