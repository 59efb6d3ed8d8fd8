#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mtkit/gateway/backend.hpp"
#include "mtkit/pipeline/compound.hpp"
#include "mtkit/pipeline/masking.hpp"
#include "mtkit/pipeline/normalize.hpp"
#include "mtkit/pipeline/pipeline.hpp"
#include "mtkit/pipeline/sentence_splitter.hpp"
#include "mtkit/pipeline/tokenizer.hpp"
#include "mtkit/pipeline/truecaser.hpp"

using namespace mtkit;
using namespace mtkit::pipeline;
namespace mt = mtkit::testing;

using Tokens = std::vector<std::string>;

TEST(Normalize, QuotesDashesAndSpaces) {
  EXPECT_EQ(normalize_chars("“Hallo” – sagte er heute", Lang::de), "\"Hallo\" - sagte er heute");
  EXPECT_EQ(normalize_chars("  a   b \r\n c ", Lang::en), "a b\nc");
  EXPECT_EQ(normalize_chars("zero​width", Lang::en), "zerowidth");
  EXPECT_EQ(normalize_chars("été", Lang::fr), "été");
}

TEST(Normalize, IsIdempotent) {
  for (const auto& l : mt::pipeline_fixture(200, 61)) {
    auto once = normalize_chars(l.text, l.lang);
    ASSERT_EQ(normalize_chars(once, l.lang), once);
  }
}

TEST(Masking, UrlsTagsAndTerms) {
  auto m = mask_entities("See https://who.int/a?b=1 and <b>COVID-19</b> now", Glossary::builtin(), "doc");
  EXPECT_EQ(m.text, "See ⟦URL-1⟧ and ⟦TAG-1⟧⟦DNT-1⟧⟦TAG-2⟧ now");
  ASSERT_EQ(m.map.entries.size(), 4u);
  EXPECT_EQ(m.map.entries[0].original, "https://who.int/a?b=1");
  EXPECT_EQ(m.map.document_id, "doc");
  EXPECT_TRUE(m.map.entries[1].glued_right);
  EXPECT_EQ(unmask_entities(m.text, m.map), "See https://who.int/a?b=1 and <b>COVID-19</b> now");
}

TEST(Masking, TrailingSentencePunctuationStaysOutsideUrls) {
  auto m = mask_entities("Visit www.example.org/path.", Glossary::builtin());
  EXPECT_EQ(m.text, "Visit ⟦URL-1⟧.");
  EXPECT_EQ(m.map.entries[0].original, "www.example.org/path");
}

TEST(Masking, LongestTermWinsAndWordBoundaries) {
  Glossary g;
  g.terms = {"WHO", "WHO Europe"};
  auto m = mask_entities("WHO Europe and WHOM", g);
  EXPECT_EQ(m.text, "⟦DNT-1⟧ and WHOM");
}

TEST(Masking, OrphanPlaceholdersThrow) {
  PlaceholderMap empty;
  try {
    unmask_entities("text ⟦URL-3⟧", empty);
    FAIL();
  } catch (const ReinstatementError& e) {
    EXPECT_EQ(e.orphans(), Tokens{"⟦URL-3⟧"});
  }
  EXPECT_TRUE(is_placeholder("⟦TAG-12⟧"));
  EXPECT_FALSE(is_placeholder("⟦tag-1⟧"));
}

TEST(Tokenizer, LanguageSpecificApostrophes) {
  EXPECT_EQ(tokenize("I don't know.", Lang::en), (Tokens{"I", "don", "'t", "know", "."}));
  EXPECT_EQ(tokenize("L'amico dell'anno", Lang::it), (Tokens{"L'", "amico", "dell'", "anno"}));
  EXPECT_EQ(tokenize("C'est l'été !", Lang::fr), (Tokens{"C'", "est", "l'", "été", "!"}));
  EXPECT_EQ(tokenize("Geht's gut?", Lang::de), (Tokens{"Geht's", "gut", "?"}));
}

TEST(Tokenizer, NumbersAbbreviationsAndPlaceholders) {
  EXPECT_EQ(tokenize("Dr. Smith paid 3,500.25 dollars.", Lang::en),
            (Tokens{"Dr.", "Smith", "paid", "3,500.25", "dollars", "."}));
  EXPECT_EQ(tokenize("(see ⟦URL-1⟧)", Lang::en), (Tokens{"(", "see", "⟦URL-1⟧", ")"}));
  EXPECT_EQ(tokenize("¿Qué? ¡Sí!", Lang::es), (Tokens{"¿", "Qué", "?", "¡", "Sí", "!"}));
}

TEST(Tokenizer, JoinWithSpacingIsExact) {
  for (const auto& l : mt::pipeline_fixture(300, 62)) {
    auto norm = normalize_chars(l.text, l.lang);
    auto masked = mask_entities(norm, Glossary::builtin());
    auto t = tokenize_with_spacing(masked.text, l.lang, PrefixList::builtin(l.lang));
    ASSERT_EQ(join_with_spacing(t), masked.text);
  }
}

TEST(Detokenizer, ConventionalSpacing) {
  EXPECT_EQ(detokenize({"Hello", ",", "world", "!"}, Lang::en), "Hello, world!");
  EXPECT_EQ(detokenize({"He", "said", "\"", "yes", "\"", "."}, Lang::en), "He said \"yes\".");
  EXPECT_EQ(detokenize({"Vraiment", "?"}, Lang::fr), "Vraiment ?");
  EXPECT_EQ(detokenize({"l'", "amico"}, Lang::it), "l'amico");
  EXPECT_EQ(detokenize({"(", "a", ")"}, Lang::en), "(a)");
}

TEST(SentenceSplitter, Rules) {
  EXPECT_EQ(split_sentences("Hello there. How are you?", Lang::en), (Tokens{"Hello there.", "How are you?"}));
  EXPECT_EQ(split_sentences("Dr. Smith arrived. He sat.", Lang::en), (Tokens{"Dr. Smith arrived.", "He sat."}));
  EXPECT_EQ(split_sentences("J. R. R. Tolkien wrote it.", Lang::en), (Tokens{"J. R. R. Tolkien wrote it."}));
  EXPECT_EQ(split_sentences("lower case. continues", Lang::en), (Tokens{"lower case. continues"}));
  EXPECT_EQ(split_sentences("Er sagte: „Nein.“ Dann ging er.", Lang::de).size(), 2u);
  EXPECT_EQ(split_sentences("One\nTwo", Lang::en), (Tokens{"One", "Two"}));
}

TEST(Truecaser, LearnsLexicalCasing) {
  auto model = train_truecaser({{"Das", "ist", "die", "Stadt"}, {"Die", "Stadt", "ist", "die", "beste"},
                                {"Heute", "die", "Stadt"}});
  EXPECT_EQ(model.best("die")->surface, "die");
  EXPECT_EQ(model.best("stadt")->surface, "Stadt");
  EXPECT_FALSE(model.best("das"));
  auto t = recase({"Die", "Stadt"}, model, CaseDirection::truecase);
  EXPECT_EQ(t, (Tokens{"die", "Stadt"}));
  EXPECT_EQ(recase(t, model, CaseDirection::detruecase), (Tokens{"Die", "Stadt"}));
  auto back = TruecaseModel::from_text(model.to_text());
  EXPECT_EQ(back.forms(), model.forms());
}

TEST(Truecaser, SkipsPlaceholdersAtSentenceStart) {
  EXPECT_EQ(first_cased_token({"⟦TAG-1⟧", "\"", "Hello"}), 2u);
  EXPECT_FALSE(first_cased_token({"1", "."}));
}

TEST(Compound, SplitsByGeometricMean) {
  auto lex = CompoundLexicon::parse(mt::compound_lexicon_text());
  EXPECT_EQ(split_compound("Gesundheitsministerium", lex), (Tokens{"Gesundheits⊕", "ministerium"}));
  EXPECT_EQ(split_compound("Infektionsschutzgesetz", lex), (Tokens{"Infektions⊕", "schutz⊕", "gesetz"}));
  EXPECT_EQ(split_compound("Haus", lex), (Tokens{"Haus"}));
  EXPECT_EQ(split_compound("Impfzentrum", lex), (Tokens{"Impf⊕", "zentrum"}));
  EXPECT_EQ(split_compound("Gesundheitsamt", lex), (Tokens{"Gesundheitsamt"})) << "part shorter than four letters";
  EXPECT_EQ(split_compound("COVID-19", lex), (Tokens{"COVID-19"}));
}

TEST(Compound, FrequentWholeWordStaysUnsplit) {
  CompoundLexicon lex;
  lex.add("arbeit", 5);
  lex.add("geber", 5);
  lex.add("arbeitgeber", 100);
  EXPECT_EQ(split_compound("Arbeitgeber", lex), (Tokens{"Arbeitgeber"}));
  lex.add("arbeit", 10000);
  lex.add("geber", 10000);
  EXPECT_EQ(split_compound("Arbeitgeber", lex), (Tokens{"Arbeit⊕", "geber"}));
}

TEST(Compound, RejoinInvertsSplit) {
  auto lex = CompoundLexicon::parse(mt::compound_lexicon_text());
  for (std::string w : {"Gesundheitsamt", "Atemschutzmasken", "Krankenhausbetten", "Wort"}) {
    auto parts = split_compound(w, lex);
    EXPECT_EQ(rejoin_compounds(parts), Tokens{w});
  }
  EXPECT_EQ(rejoin_compounds({"a⊕", "b", "c"}), (Tokens{"ab", "c"}));
  EXPECT_EQ(CompoundLexicon::parse(lex.to_text()).size(), lex.size());
}

namespace {

std::string round_trip(const std::string& text, LanguagePair pair, const PipelineModels& models) {
  auto pre = preprocess(text, pair, models, "t");
  auto engine = gateway::make_mock_backend(gateway::MockMode::identity);
  return postprocess(engine->translate(pre.lines, pair), pre.state, models);
}

}  // namespace

TEST(Pipeline, IdentityRoundTripProperty) {
  PipelineModels de;
  de.compound_lexicon = std::make_shared<CompoundLexicon>(CompoundLexicon::parse(mt::compound_lexicon_text()));
  PipelineModels plain;
  for (std::uint64_t seed : {1, 2, 3}) {
    for (const auto& l : mt::pipeline_fixture(200, seed)) {
      LanguagePair pair = l.lang == Lang::en ? LanguagePair{Lang::en, Lang::fr} : LanguagePair{l.lang, Lang::en};
      ASSERT_EQ(round_trip(l.text, pair, l.lang == Lang::de ? de : plain), normalize_chars(l.text, l.lang));
    }
  }
}

TEST(Pipeline, MultiParagraphDocuments) {
  PipelineModels m;
  std::string doc = "First paragraph. It has two sentences.\n\nSecond one, with a URL: https://x.org/y.\nThird!";
  auto pre = preprocess(doc, {Lang::en, Lang::de}, m);
  EXPECT_EQ(pre.lines.size(), 4u);
  EXPECT_EQ(round_trip(doc, {Lang::en, Lang::de}, m), normalize_chars(doc, Lang::en));
}

TEST(Pipeline, StagesAreApplied) {
  PipelineModels m;
  m.compound_lexicon = std::make_shared<CompoundLexicon>(CompoundLexicon::parse(mt::compound_lexicon_text()));
  m.bpe = std::make_shared<bpe::BpeModel>(std::vector<bpe::SymbolPair>{{"a", "m"}, {"am", "t</w>"}}, "@@");
  m.source_truecaser = std::make_shared<TruecaseModel>(train_truecaser({{"x", "das", "amt"}}));
  auto pre = preprocess("Das Impfzentrum: www.rki.de", {Lang::de, Lang::en}, m);
  ASSERT_EQ(pre.lines.size(), 1u);
  EXPECT_EQ(pre.lines[0], "d@@ a@@ s I@@ m@@ p@@ f@@ ⊕ z@@ e@@ n@@ t@@ r@@ u@@ m : ⟦URL-1⟧");
  EXPECT_TRUE(pre.state.compounds_split);
  EXPECT_TRUE(pre.state.truecased);
}

TEST(Pipeline, TranslatedTextIsDetokenizedForTheTarget) {
  PipelineModels m;
  auto pre = preprocess("Hallo Welt, siehe <b>WHO</b>!", {Lang::de, Lang::fr}, m);
  auto out = postprocess({"bonjour monde , voir ⟦TAG-1⟧ ⟦DNT-1⟧ ⟦TAG-2⟧ !"}, pre.state, m);
  EXPECT_EQ(out, "bonjour monde, voir <b>WHO</b>!") << "glued placeholder keeps its neighbour";
  auto plain = preprocess("Hallo Welt, wirklich?", {Lang::de, Lang::fr}, m);
  EXPECT_EQ(postprocess({"bonjour monde , vraiment ?"}, plain.state, m), "bonjour monde, vraiment ?");
}

TEST(Pipeline, SpellcheckHookSeesTokens) {
  PipelineModels m;
  std::vector<Tokens> seen;
  m.spellcheck = [&](Tokens t, Lang lang) {
    EXPECT_EQ(lang, Lang::en);
    seen.push_back(t);
    for (auto& w : t) {
      if (w == "teh") w = "the";
    }
    return t;
  };
  auto pre = preprocess("Fix teh typo.", {Lang::en, Lang::de}, m);
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_EQ(pre.lines[0], "Fix the typo .");
}

TEST(Pipeline, LineCountMismatchAndOrphans) {
  PipelineModels m;
  auto pre = preprocess("One. Two.", {Lang::en, Lang::de}, m);
  EXPECT_THROW(postprocess({"one"}, pre.state, m), PipelineError);
  EXPECT_THROW(postprocess({"one ⟦URL-9⟧", "two"}, pre.state, m), ReinstatementError);
}

TEST(Pipeline, EmptyInput) {
  PipelineModels m;
  auto pre = preprocess("   ", {Lang::en, Lang::de}, m);
  EXPECT_TRUE(pre.lines.empty());
  EXPECT_EQ(postprocess({}, pre.state, m), "");
}
