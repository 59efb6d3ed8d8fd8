#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mtkit/errors.hpp"
#include "mtkit/pipeline/resources.hpp"

namespace mtkit::pipeline {

enum class EntityKind { URL, TAG, DNT };
std::string_view to_string(EntityKind kind);

// Placeholders look like "⟦URL-1⟧": brackets U+27E6/U+27E7 around an
// upper-case kind, a dash and a 1-based per-kind counter.
inline constexpr std::string_view kPlaceholderOpen = "⟦";
inline constexpr std::string_view kPlaceholderClose = "⟧";

struct Placeholder {
  std::string token;
  std::string original;
  EntityKind kind = EntityKind::DNT;
  // Whether the placeholder touched non-space text on either side in the
  // masked text; the detokenizer uses this to reattach tags and the like.
  bool glued_left = false;
  bool glued_right = false;
};

struct PlaceholderMap {
  std::vector<Placeholder> entries;
  std::string document_id;

  const Placeholder* find(std::string_view token) const;
  bool empty() const { return entries.empty(); }
};

struct MaskedText {
  std::string text;
  PlaceholderMap map;
};

// Replaces URLs (scheme:// or www. prefixed), angle-bracket tags and
// glossary terms. Overlapping candidates: longest first, then leftmost.
MaskedText mask_entities(std::string_view text, const Glossary& glossary,
                         std::string document_id = {});

class ReinstatementError : public Error {
 public:
  explicit ReinstatementError(std::vector<std::string> orphans);
  const std::vector<std::string>& orphans() const { return orphans_; }

 private:
  std::vector<std::string> orphans_;
};

// Throws ReinstatementError when `text` holds placeholders missing from `map`.
std::string unmask_entities(std::string_view text, const PlaceholderMap& map);

bool is_placeholder(std::string_view token);
// Length in bytes of a placeholder starting at `pos`, or 0.
std::size_t placeholder_length_at(std::string_view text, std::size_t pos);

}  // namespace mtkit::pipeline
