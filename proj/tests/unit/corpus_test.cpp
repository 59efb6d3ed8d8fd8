#include <gtest/gtest.h>

#include "generators.hpp"
#include "mtkit/corpus.hpp"
#include "mtkit/errors.hpp"
#include "mtkit/text_io.hpp"
#include "temp_dir.hpp"

using namespace mtkit;
namespace mt = mtkit::testing;
using namespace mtkit::corpus;

namespace {

ParallelCorpus make(std::vector<std::pair<std::string, std::string>> rows) {
  ParallelCorpus c;
  c.langs = {Lang::de, Lang::en};
  for (auto& [s, t] : rows) c.pairs.push_back({Segment(s), Segment(t), "t"});
  return c;
}

}  // namespace

TEST(Segment, ComposesAndCountsTokens) {
  Segment s("Café  au lait");
  EXPECT_EQ(s.text(), "Café  au lait");
  EXPECT_EQ(s.token_count(), 3u);
  EXPECT_THROW(Segment("a\nb"), Error);
  EXPECT_TRUE(Segment("   ").empty());
}

TEST(Corpus, LoadsDualAndTsv) {
  mt::TempDir dir;
  write_file(dir / "a.de", "Hallo Welt\nZwei\n");
  write_file(dir / "a.en", "Hello world\nTwo\n");
  auto c = load_parallel(CorpusLocation::dual(dir / "a.de", dir / "a.en"), {Lang::de, Lang::en}, "x");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.pairs[1].target.text(), "Two");
  EXPECT_EQ(c.pairs[0].provenance, "x");

  save_parallel(c, CorpusLocation::tsv(dir / "a.tsv"));
  auto t = load_parallel(CorpusLocation::tsv(dir / "a.tsv"), {Lang::de, Lang::en}, "x");
  EXPECT_EQ(t.pairs, c.pairs);
}

TEST(Corpus, MisalignedFilesThrowWithCounts) {
  mt::TempDir dir;
  write_file(dir / "a.de", "a\nb\nc\n");
  write_file(dir / "a.en", "a\nb\n");
  try {
    load_parallel(CorpusLocation::dual(dir / "a.de", dir / "a.en"), {Lang::de, Lang::en});
    FAIL();
  } catch (const AlignmentError& e) {
    EXPECT_EQ(e.source_lines(), 3u);
    EXPECT_EQ(e.target_lines(), 2u);
  }
}

TEST(Corpus, TsvWithoutTabIsFormatError) {
  try {
    parse_tsv("a\tb\nno tab here\n", {Lang::de, Lang::en});
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Corpus, ValidateRejectsNonEnglishPairs) {
  ParallelCorpus c;
  c.langs = {Lang::de, Lang::fr};
  EXPECT_THROW(c.validate(), ConfigError);
  c.langs = {Lang::de, Lang::en};
  EXPECT_NO_THROW(c.validate());
}

TEST(Cleaning, FirstViolatedRuleWins) {
  CleaningConfig cfg;
  cfg.min_tokens = 2;
  cfg.max_tokens = 5;
  cfg.max_length_ratio = 2;
  cfg.drop_duplicates = true;
  auto c = make({{"", "x"},                       // empty
                 {"a", "b c"},                    // too short
                 {"a b c d e f", "a"},            // too short wins over too long
                 {"a b c d e f", "a b c d e f"},  // too long
                 {"a b", "a b c d e"},            // ratio
                 {"a b", "c d"},
                 {"a b", "c d"}});  // duplicate
  auto [kept, report] = clean(c, cfg);
  EXPECT_EQ(report.removed_by_rule.at("empty"), 1u);
  EXPECT_EQ(report.removed_by_rule.at("too_short"), 2u);
  EXPECT_EQ(report.removed_by_rule.at("too_long"), 1u);
  EXPECT_EQ(report.removed_by_rule.at("ratio"), 1u);
  EXPECT_EQ(report.removed_by_rule.at("duplicate"), 1u);
  EXPECT_EQ(kept.size(), 1u);
  EXPECT_EQ(report.retained_pairs + report.removed_total(), report.input_pairs);
}

TEST(Cleaning, DuplicatesKeptByDefault) {
  auto c = make({{"a b", "c d"}, {"a b", "c d"}});
  auto [kept, report] = clean(c, CleaningConfig{});
  EXPECT_EQ(kept.size(), 2u);
  EXPECT_EQ(report.removed_total(), 0u);
}

TEST(Cleaning, ConfigValidation) {
  CleaningConfig c;
  c.min_tokens = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.min_tokens = 10;
  c.max_tokens = 5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.max_length_ratio = 0.5;
  EXPECT_THROW(c.validate(), ConfigError);
}

// Property: conservation and idempotence on random corpora.
TEST(Cleaning, ConservationProperty) {
  mt::Rng rng(11);
  std::vector<std::string> vocab = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 100; ++trial) {
    ParallelCorpus c;
    c.langs = {Lang::fr, Lang::en};
    std::size_t n = rng.between(0, 60);
    for (std::size_t i = 0; i < n; ++i) {
      c.pairs.push_back({Segment(mt::random_sentence(rng, vocab, 0, 12)),
                         Segment(mt::random_sentence(rng, vocab, 0, 12)), "r"});
    }
    CleaningConfig cfg;
    cfg.min_tokens = rng.between(1, 3);
    cfg.max_tokens = rng.between(cfg.min_tokens, 10);
    cfg.max_length_ratio = 1.0 + static_cast<double>(rng.below(4));
    cfg.drop_duplicates = rng.chance(0.5);
    auto [kept, report] = clean(c, cfg);
    ASSERT_EQ(report.input_pairs, n);
    ASSERT_EQ(report.retained_pairs + report.removed_total(), n);
    auto [again, second] = clean(kept, cfg);
    ASSERT_EQ(again.pairs, kept.pairs);
    ASSERT_EQ(second.removed_total(), 0u);
  }
}

TEST(Cleaning, ReportRendering) {
  auto [kept, report] = clean(make({{"", "x"}, {"a", "b"}}), CleaningConfig{});
  EXPECT_NE(report.to_json().find("\"empty\": 1"), std::string::npos) << report.to_json();
  EXPECT_NE(report.to_table().find("empty"), std::string::npos);
}

TEST(Stats, CountsWords) {
  auto s = corpus_stats(make({{"a b c", "x y"}, {"d", "z"}}));
  EXPECT_EQ(s.segments, 2u);
  EXPECT_EQ(s.source_words, 4u);
  EXPECT_EQ(s.target_words, 3u);
  EXPECT_EQ(s.header(), "Sent | Words(de) | Words(en)");
  EXPECT_EQ(s.row(), "2 | 4 | 3");
}
