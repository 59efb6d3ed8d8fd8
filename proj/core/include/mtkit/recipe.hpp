#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtkit/errors.hpp"
#include "mtkit/language.hpp"

namespace mtkit::recipe {

// Step kinds, in the order a full experiment uses them.
inline constexpr std::string_view kStepKinds[] = {"clean",    "train-lm",  "select",
                                                  "copy-augment", "build-set", "bpe-learn",
                                                  "emit-config",  "evaluate"};

struct StepSpec {
  std::string kind;
  std::string id;
  std::vector<std::pair<std::string, std::string>> params;
  // Directory that relative file paths of this step resolve against.
  std::filesystem::path base_dir;

  std::optional<std::string> get(std::string_view key) const;
  void set(std::string key, std::string value);
};

// Text format:
//   name = it-en-row5
//   seed = 7
//   source_lang = it
//   target_lang = en
//   workspace = work
//   inherit = row3.recipe, row4.recipe
//   [step clean base]
//   source = data/train.it
// Parents are merged first, in order; later keys win and a step whose id
// is already present replaces the earlier one in place.
struct Recipe {
  std::string name;
  std::uint64_t seed = 0;
  LanguagePair langs{Lang::it, Lang::en};
  std::filesystem::path workspace;
  std::vector<StepSpec> steps;
};

class RecipeError : public Error {
 public:
  RecipeError(std::string message, std::string step = {});
  const std::string& step() const { return step_; }

 private:
  std::string step_;
};

// Parses one file without resolving `inherit`. Throws ParseError.
Recipe parse_recipe(std::string_view content, const std::filesystem::path& base_dir);
// Loads a file and its ancestors.
Recipe load_recipe(const std::filesystem::path& path);

struct ArtifactRecord {
  std::string name;
  std::string path;
  std::string hash;
  std::size_t rows = 0;
  friend bool operator==(const ArtifactRecord&, const ArtifactRecord&) = default;
};

struct StepRecord {
  std::string id;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<ArtifactRecord> inputs;
  std::vector<ArtifactRecord> outputs;
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct Manifest {
  std::string recipe;
  std::uint64_t seed = 0;
  LanguagePair langs;
  std::vector<StepRecord> steps;

  const StepRecord* find(std::string_view id) const;
  std::string to_json() const;
  static Manifest from_json(std::string_view text);
  friend bool operator==(const Manifest&, const Manifest&) = default;
};

struct RunResult {
  Manifest manifest;
  std::vector<std::string> warnings;
};

inline constexpr std::string_view kManifestFile = "manifest.json";

// Runs every step in order inside the workspace and writes the manifest
// there. Differences against an earlier manifest are reported as warnings
// (also written to `log` when given). Throws RecipeError naming the step.
RunResult run_recipe(const Recipe& recipe, std::ostream* log = nullptr);

// Human-readable differences; empty when the manifests agree.
std::vector<std::string> diff_manifests(const Manifest& a, const Manifest& b);

}  // namespace mtkit::recipe
