#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "mtkit/data_selection.hpp"
#include "mtkit/errors.hpp"
#include "temp_dir.hpp"

using namespace mtkit;
using namespace mtkit::selection;
namespace mt = mtkit::testing;

namespace {

struct Trained {
  mt::TwoDomainData data;
  LmQuad quad;
};

const Trained& trained() {
  static const Trained t = [] {
    Trained t{mt::two_domain_corpus(150, 200, 51), {}};
    t.quad.langs = t.data.langs;
    t.quad.in_src = std::make_shared<lm::NGramModel>(train_selection_lm(t.data.in_src, Lang::it, 3));
    t.quad.out_src = std::make_shared<lm::NGramModel>(train_selection_lm(t.data.out_src, Lang::it, 3));
    t.quad.in_tgt = std::make_shared<lm::NGramModel>(train_selection_lm(t.data.in_tgt, Lang::en, 3));
    t.quad.out_tgt = std::make_shared<lm::NGramModel>(train_selection_lm(t.data.out_tgt, Lang::en, 3));
    return t;
  }();
  return t;
}

corpus::ParallelCorpus tiny(LanguagePair langs, std::vector<std::string> src, bool copied = false) {
  corpus::ParallelCorpus c;
  c.langs = langs;
  c.copied = copied;
  for (auto& s : src) c.pairs.push_back({corpus::Segment(s), corpus::Segment(s + " t"), "p"});
  return c;
}

}  // namespace

TEST(Selection, PreparationTokenizesAndLowercases) {
  EXPECT_EQ(prepare_for_lm("L'Italia, oggi!", Lang::it), "l' italia , oggi !");
  EXPECT_EQ(prepare_for_lm("“Hello” World", Lang::en), "\" hello \" world");
  EXPECT_EQ(preprocessing_tag(Lang::de), "tok-lc:de");
  auto model = train_selection_lm({"Ciao Mondo"}, Lang::it, 2);
  EXPECT_EQ(model.preprocessing(), "tok-lc:it");
}

TEST(Selection, QuadValidation) {
  LmQuad q = trained().quad;
  EXPECT_NO_THROW(q.validate());
  auto swapped = q;
  swapped.in_src = q.in_tgt;
  EXPECT_THROW(swapped.validate(), ConfigError);
  auto missing = q;
  missing.out_tgt.reset();
  EXPECT_THROW(missing.validate(), ConfigError);
  auto untagged = q;
  untagged.in_src = std::make_shared<lm::NGramModel>(lm::train_lm({"a b"}));
  EXPECT_THROW(untagged.validate(), ConfigError);
  EXPECT_NO_THROW(untagged.validate(true));
}

TEST(Selection, BilingualScoreIsSumOfSides) {
  const auto& t = trained();
  for (std::size_t i = 0; i < t.data.pool.size(); i += 7) {
    const auto& p = t.data.pool.pairs[i];
    auto s = score_bilingual(p, t.data.langs, t.quad, i);
    double src = score_monolingual(prepare_for_lm(p.source.text(), Lang::it), *t.quad.in_src, *t.quad.out_src);
    double tgt = score_monolingual(prepare_for_lm(p.target.text(), Lang::en), *t.quad.in_tgt, *t.quad.out_tgt);
    EXPECT_EQ(s.score, src + tgt);
    EXPECT_EQ(s.h_in_src - s.h_out_src, src);
    EXPECT_EQ(s.h_in_src, lm::cross_entropy(*t.quad.in_src, prepare_for_lm(p.source.text(), Lang::it)));
    EXPECT_EQ(s.pair_index, i);
  }
  EXPECT_THROW(score_bilingual(t.data.pool.pairs[0], {Lang::de, Lang::en}, t.quad), ConfigError);
}

TEST(Selection, ScoresIndependentOfThreadCount) {
  const auto& t = trained();
  auto one = score_corpus(t.data.pool, t.quad, 1);
  auto many = score_corpus(t.data.pool, t.quad, 5);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].pair_index, i);
    EXPECT_EQ(one[i].score, many[i].score);
  }
}

TEST(Selection, SelectsTheInDomainHalf) {
  const auto& t = trained();
  auto sel = select_top(t.data.pool, t.quad, 150);
  ASSERT_EQ(sel.selected.size(), 150u);
  for (const auto& p : sel.selected.pairs) EXPECT_EQ(p.provenance, "in");
  EXPECT_EQ(sel.scores.size(), t.data.pool.size());
  auto all = select_top(t.data.pool, t.quad, 10000);
  EXPECT_EQ(all.selected.size(), t.data.pool.size());
}

TEST(Selection, RankLowestBreaksTiesByIndex) {
  std::vector<SelectionScore> s(6);
  double values[] = {0.5, -1, 0.5, -1, 2, 0.5};
  for (std::size_t i = 0; i < 6; ++i) {
    s[i].pair_index = i;
    s[i].score = values[i];
  }
  EXPECT_EQ(rank_lowest(s, 4), (std::vector<std::size_t>{1, 3, 0, 2}));
  EXPECT_EQ(rank_lowest(s, 0).size(), 0u);
  EXPECT_EQ(rank_lowest(s, 99).size(), 6u);
}

TEST(Selection, TsvRoundTrip) {
  const auto& t = trained();
  auto scores = score_corpus(t.data.pool, t.quad);
  auto back = scores_from_tsv(scores_to_tsv(scores));
  ASSERT_EQ(back.size(), scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    EXPECT_EQ(back[i].score, scores[i].score);
    EXPECT_EQ(back[i].h_out_tgt, scores[i].h_out_tgt);
  }
  EXPECT_THROW(scores_from_tsv("index\tscore\n1\t2\n"), Error);
}

TEST(Selection, CopyAugmentDuplicatesTarget) {
  std::vector<corpus::Segment> mono = {corpus::Segment("Hello there"), corpus::Segment("Bye")};
  auto c = copy_augment(mono, "news", {Lang::it, Lang::en});
  EXPECT_TRUE(c.copied);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.pairs[0].source, c.pairs[0].target);
  EXPECT_EQ(c.pairs[1].provenance, "news");
}

TEST(FinetuneSet, ShuffleIsSeededPermutation) {
  LanguagePair langs{Lang::it, Lang::en};
  auto base = tiny(langs, {"a", "b", "c", "d", "e"});
  auto extra = tiny(langs, {"f", "g"});
  auto copied = tiny({Lang::en, Lang::en}, {"h"}, true);
  auto x = build_finetune_set(base, {extra, copied}, 17);
  auto y = build_finetune_set(base, {extra, copied}, 17);
  auto z = build_finetune_set(base, {extra, copied}, 18);
  EXPECT_EQ(x.pairs, y.pairs);
  EXPECT_NE(x.pairs, z.pairs);
  std::multiset<std::string> got, want = {"a", "b", "c", "d", "e", "f", "g", "h"};
  for (const auto& p : x.pairs) got.insert(p.source.text());
  EXPECT_EQ(got, want);
  EXPECT_EQ(x.langs, langs);
}

TEST(FinetuneSet, RejectsMismatchedLanguages) {
  auto base = tiny({Lang::it, Lang::en}, {"a"});
  EXPECT_THROW(build_finetune_set(base, {tiny({Lang::de, Lang::en}, {"b"})}, 1), ConfigError);
  EXPECT_THROW(build_finetune_set(base, {tiny({Lang::de, Lang::de}, {"b"}, true)}, 1), ConfigError);
}

TEST(Selection, UniformBelowStaysInRange) {
  std::mt19937_64 engine(3);
  std::vector<std::size_t> hist(7);
  for (int i = 0; i < 7000; ++i) ++hist[uniform_below(engine, 7)];
  for (auto h : hist) EXPECT_GT(h, 800u);
}
