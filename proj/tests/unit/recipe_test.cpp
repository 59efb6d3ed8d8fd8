#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "mtkit/recipe.hpp"
#include "mtkit/text_io.hpp"
#include "temp_dir.hpp"

using namespace mtkit;
using namespace mtkit::recipe;
namespace mt = mtkit::testing;
namespace fs = std::filesystem;

namespace {

void put_lines(const fs::path& p, const std::vector<std::string>& lines) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p);
  for (const auto& l : lines) out << l << '\n';
}

void put_text(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

const char* kFullRecipe = R"(name = it-en-full
seed = 11
source_lang = it
target_lang = en
workspace = work

[step clean pool]
source = data/pool.it
target = data/pool.en
min_tokens = 2
max_tokens = 60
dedup = true

[step train-lm lm_in_it]
input = data/in.it
lang = it
order = 3

[step train-lm lm_out_it]
input = data/out.it
lang = it
order = 3

[step train-lm lm_in_en]
input = data/in.en
side = target
order = 3

[step train-lm lm_out_en]
input = data/out.en
side = target
order = 3
smoothing = wb

[step select sel]
corpus = @pool
in_src = @lm_in_it
out_src = @lm_out_it
in_tgt = @lm_in_en
out_tgt = @lm_out_en
n = 40

[step copy-augment copy]
input = data/mono.en

[step build-set ft]
base = @sel
add = @copy

[step bpe-learn bpe]
inputs = @ft.source, @ft.target
merges = 200

[step emit-config cfg]
set.beam_size = 5
bpe = @bpe

[step evaluate eval]
testset.dev = data/dev.en
system.base.dev = data/hyp_a.en
system.tuned.dev = data/hyp_b.en
significance = true
iterations = 200
)";

struct Workspace {
  mt::TempDir dir;

  Workspace() {
    auto d = mt::two_domain_corpus(60, 200, 5);
    std::vector<std::string> ps, pt;
    for (const auto& p : d.pool.pairs) {
      ps.push_back(p.source.text());
      pt.push_back(p.target.text());
    }
    put_lines(dir / "data/pool.it", ps);
    put_lines(dir / "data/pool.en", pt);
    put_lines(dir / "data/in.it", d.in_src);
    put_lines(dir / "data/out.it", d.out_src);
    put_lines(dir / "data/in.en", d.in_tgt);
    put_lines(dir / "data/out.en", d.out_tgt);
    put_lines(dir / "data/mono.en", {d.in_tgt.begin(), d.in_tgt.begin() + 10});
    std::vector<std::string> dev(d.in_tgt.begin() + 20, d.in_tgt.begin() + 50);
    put_lines(dir / "data/dev.en", dev);
    mt::Rng rng(3);
    put_lines(dir / "data/hyp_a.en", mt::perturb(rng, dev, 0.4));
    put_lines(dir / "data/hyp_b.en", mt::perturb(rng, dev, 0.1));
    put_text(dir / "full.recipe", kFullRecipe);
  }
};

}  // namespace

TEST(Recipe, ParsesKeysAndSteps) {
  auto r = parse_recipe("name = x\nseed = 3\nsource_lang = de\ntarget_lang = en\nworkspace = w\n"
                        "# comment\n[step clean]\nsource = a\n[step train-lm lm]\norder = 2\n",
                        "/base");
  EXPECT_EQ(r.name, "x");
  EXPECT_EQ(r.seed, 3u);
  EXPECT_EQ(r.langs, (LanguagePair{Lang::de, Lang::en}));
  EXPECT_EQ(r.workspace, fs::path("/base/w"));
  ASSERT_EQ(r.steps.size(), 2u);
  EXPECT_EQ(r.steps[0].kind, "clean");
  EXPECT_EQ(r.steps[0].id, "clean");
  EXPECT_EQ(r.steps[0].get("source"), "a");
  EXPECT_EQ(r.steps[1].id, "lm");
  EXPECT_FALSE(r.steps[1].get("missing"));
}

TEST(Recipe, RejectsMalformedInput) {
  EXPECT_THROW(parse_recipe("[step frobnicate]\n", "."), ParseError);
  EXPECT_THROW(parse_recipe("[step clean a]\n[step clean a]\n", "."), ParseError);
  EXPECT_THROW(parse_recipe("colour = red\n", "."), ParseError);
  EXPECT_THROW(parse_recipe("seed = -1\n", "."), ParseError);
  EXPECT_THROW(parse_recipe("just words\n", "."), ParseError);
  EXPECT_THROW(parse_recipe("[step clean\n", "."), ParseError);
}

TEST(Recipe, InheritanceMergesAndDetectsCycles) {
  mt::TempDir dir;
  put_text(dir / "base.recipe",
             "name = base\nseed = 1\nworkspace = w\n[step clean a]\nsource = s1\n[step clean b]\nsource = s2\n");
  put_text(dir / "child.recipe",
             "inherit = base.recipe\nseed = 9\n[step clean a]\nsource = s3\n[step train-lm c]\ninput = x\n");
  auto r = load_recipe(dir / "child.recipe");
  EXPECT_EQ(r.name, "base");
  EXPECT_EQ(r.seed, 9u);
  ASSERT_EQ(r.steps.size(), 3u);
  EXPECT_EQ(r.steps[0].id, "a");
  EXPECT_EQ(r.steps[0].get("source"), "s3");
  EXPECT_EQ(r.steps[1].id, "b");
  EXPECT_EQ(r.steps[2].id, "c");

  put_text(dir / "x.recipe", "inherit = y.recipe\n");
  put_text(dir / "y.recipe", "inherit = x.recipe\n");
  EXPECT_THROW(load_recipe(dir / "x.recipe"), RecipeError);
  EXPECT_THROW(load_recipe(dir / "absent.recipe"), RecipeError);
}

TEST(Recipe, FullRunIsReproducible) {
  Workspace ws;
  auto recipe = load_recipe(ws.dir / "full.recipe");
  std::ostringstream log;
  auto first = run_recipe(recipe, &log);
  EXPECT_TRUE(first.warnings.empty()) << log.str();
  ASSERT_EQ(first.manifest.steps.size(), 11u);

  auto work = ws.dir / "work";
  EXPECT_TRUE(fs::exists(work / std::string(kManifestFile)));
  for (const char* f : {"pool.it", "pool.en", "pool.report.json", "lm_in_it.arpa", "sel.scores.tsv",
                        "sel.it", "ft.en", "bpe.bpe", "cfg.yaml", "eval.tsv"}) {
    EXPECT_TRUE(fs::exists(work / f)) << f;
  }
  const auto* sel = first.manifest.find("sel");
  ASSERT_NE(sel, nullptr);
  EXPECT_EQ(sel->outputs[0].rows, 40u);
  const auto* ft = first.manifest.find("ft");
  ASSERT_NE(ft, nullptr);
  EXPECT_EQ(ft->outputs[0].rows, 50u);
  auto copy_src = read_lines(work / "copy.it");
  EXPECT_EQ(copy_src, read_lines(work / "copy.en"));

  auto cfg = read_file(work / "cfg.yaml");
  EXPECT_NE(cfg.find("beam_size: 5"), std::string::npos);
  auto bpe_merges = first.manifest.find("bpe")->outputs[0].rows;
  EXPECT_NE(cfg.find("bpe_merges: " + std::to_string(bpe_merges)), std::string::npos);

  auto table = read_lines(work / "eval.tsv");
  ASSERT_EQ(table.size(), 3u);
  EXPECT_EQ(table[0], "#\tSystem\tBLEU dev\tchrF dev\tp(BLEU) dev");
  EXPECT_EQ(table[1].rfind("1\tbase\t", 0), 0u);
  EXPECT_EQ(table[2].rfind("2\ttuned\t", 0), 0u);

  EXPECT_EQ(Manifest::from_json(first.manifest.to_json()), first.manifest);

  auto second = run_recipe(recipe);
  EXPECT_TRUE(second.warnings.empty());
  EXPECT_EQ(second.manifest, first.manifest);
  EXPECT_TRUE(diff_manifests(first.manifest, second.manifest).empty());

  auto pool = read_lines(ws.dir / "data/pool.en");
  pool[0] += " changed";
  put_lines(ws.dir / "data/pool.en", pool);
  auto third = run_recipe(recipe);
  ASSERT_FALSE(third.warnings.empty());
  EXPECT_NE(third.warnings[0].find("step 'pool'"), std::string::npos);
  EXPECT_NE(third.warnings[0].find("stale"), std::string::npos);
  auto diff = diff_manifests(first.manifest, third.manifest);
  ASSERT_FALSE(diff.empty());
  EXPECT_EQ(diff[0].rfind("pool: input 'target' differs", 0), 0u);
}

TEST(Recipe, StepErrorsNameTheStep) {
  Workspace ws;
  put_text(ws.dir / "bad.recipe",
             "workspace = w\n[step clean pool]\nsource = data/pool.it\ntarget = data/pool.en\n"
             "[step select sel]\ncorpus = @pool\nin_src = @nothing\n");
  try {
    run_recipe(load_recipe(ws.dir / "bad.recipe"));
    FAIL();
  } catch (const RecipeError& e) {
    EXPECT_EQ(e.step(), "sel");
  }
  put_text(ws.dir / "missing.recipe", "workspace = w\n[step clean c]\nsource = nope\ntarget = nope\n");
  try {
    run_recipe(load_recipe(ws.dir / "missing.recipe"));
    FAIL();
  } catch (const RecipeError& e) {
    EXPECT_EQ(e.step(), "c");
    EXPECT_NE(std::string(e.what()).find("missing input"), std::string::npos);
  }
  EXPECT_THROW(run_recipe(Recipe{}), RecipeError);
}

TEST(Recipe, DiffReportsStructuralChanges) {
  Manifest a;
  a.recipe = "r";
  a.steps.push_back({"s1", "clean", {{"k", "1"}}, {}, {{"source", "s1.it", "abc", 3}}});
  Manifest b = a;
  EXPECT_TRUE(diff_manifests(a, b).empty());
  b.seed = 4;
  b.steps[0].params[0].second = "2";
  b.steps[0].outputs[0].rows = 4;
  b.steps.push_back({"s2", "bpe-learn", {}, {}, {}});
  auto d = diff_manifests(a, b);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d[0], "seed: 0 vs 4");
  EXPECT_EQ(d[1], "s1: parameters differ");
  EXPECT_NE(d[2].find("output 'source' differs"), std::string::npos);
  EXPECT_EQ(d[3], "s2: step only in B");
}
