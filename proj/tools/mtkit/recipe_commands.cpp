#include <filesystem>
#include <iostream>
#include <map>
#include <memory>

#include "commands.hpp"
#include "io.hpp"
#include "mtkit/errors.hpp"
#include "mtkit/gateway/training_config.hpp"
#include "mtkit/recipe.hpp"
#include "mtkit/text_io.hpp"

namespace mtkit::cli {

namespace {

recipe::Manifest load_manifest(const std::string& arg) {
  std::filesystem::path p(arg);
  if (std::filesystem::is_directory(p)) p /= recipe::kManifestFile;
  return recipe::Manifest::from_json(read_file(p));
}

}  // namespace

void add_recipe_commands(CLI::App& app) {
  auto* rc = app.add_subcommand("recipe", "Run experiment recipes and compare their manifests");
  rc->require_subcommand(1);

  auto file = std::make_shared<std::string>();
  auto* r = rc->add_subcommand("run", "Execute every step and write the workspace manifest");
  r->add_option("recipe", *file, "Recipe file")->required();
  r->callback([file] {
    auto recipe = recipe::load_recipe(*file);
    auto result = recipe::run_recipe(recipe, &std::cerr);
    for (const auto& step : result.manifest.steps) {
      std::cout << step.id << " (" << step.kind << ")";
      for (const auto& out : step.outputs) std::cout << "  " << out.name << "=" << out.rows;
      std::cout << '\n';
    }
    std::cout << "manifest: " << (recipe.workspace / recipe::kManifestFile).string() << '\n';
  });

  auto pair = std::make_shared<std::pair<std::string, std::string>>();
  auto* d = rc->add_subcommand("diff", "Compare two manifests (files or workspaces); exit 1 on differences");
  d->add_option("a", pair->first)->required();
  d->add_option("b", pair->second)->required();
  d->callback([pair] {
    auto diffs = recipe::diff_manifests(load_manifest(pair->first), load_manifest(pair->second));
    for (const auto& line : diffs) std::cout << line << '\n';
    if (diffs.empty()) std::cout << "manifests are identical\n";
    exit_code = diffs.empty() ? 0 : 1;
  });
}

void add_config_commands(CLI::App& app) {
  auto* cfg = app.add_subcommand("config", "Training configuration documents");
  cfg->require_subcommand(1);

  struct EmitOpts {
    std::string pair = "de-en", output;
    std::vector<std::string> sets;
  };
  auto emit = std::make_shared<EmitOpts>();
  auto* e = cfg->add_subcommand("emit", "Write the Transformer training settings for a pair");
  e->add_option("--pair", emit->pair)->capture_default_str();
  e->add_option("--set", emit->sets, "Override as FIELD=VALUE (repeatable)");
  e->add_option("--output,-o", emit->output);
  e->callback([emit] {
    std::map<std::string, std::string> overrides;
    for (const auto& s : emit->sets) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("expected FIELD=VALUE, got '" + s + "'");
      overrides[s.substr(0, eq)] = s.substr(eq + 1);
    }
    auto config = gateway::emit_training_config(pair_from_string(emit->pair), overrides);
    write_output(emit->output, gateway::to_text(config));
  });
}

}  // namespace mtkit::cli
