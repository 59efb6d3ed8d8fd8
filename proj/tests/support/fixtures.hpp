#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "generators.hpp"
#include "mtkit/corpus.hpp"
#include "mtkit/language.hpp"

namespace mtkit::testing {

struct PipelineLine {
  Lang lang;
  std::string text;
};

// Mixed-language document lines with URLs, markup, glossary terms,
// typographic punctuation and (German) compounds.
std::vector<PipelineLine> pipeline_fixture(std::size_t lines, std::uint64_t seed);
const std::vector<std::string>& fixture_urls();
// "word count" lines covering the compound parts used by the fixture.
std::string compound_lexicon_text();

struct TwoDomainData {
  LanguagePair langs{Lang::it, Lang::en};
  std::vector<std::string> in_src, in_tgt;    // LM training text
  std::vector<std::string> out_src, out_tgt;  // LM training text
  corpus::ParallelCorpus pool;                // provenance "in" or "out"
};

// Two domains with disjoint content vocabularies and shared function words.
TwoDomainData two_domain_corpus(std::size_t pairs_per_domain, std::size_t lm_lines,
                                std::uint64_t seed);

struct CleaningFixture {
  corpus::ParallelCorpus corpus;
  corpus::CleaningConfig config;
  std::map<std::string, std::size_t> expected_removed;
  std::size_t expected_retained = 0;
};

// Violations are planted by construction so that each pair breaks exactly
// the rule it is counted under.
CleaningFixture cleaning_fixture(std::uint64_t seed);

// Replaces roughly `rate` of the tokens of each line with a filler word.
std::vector<std::string> perturb(Rng& rng, const std::vector<std::string>& lines, double rate);

}  // namespace mtkit::testing
