#include "mtkit/pipeline/masking.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "mtkit/unicode.hpp"

namespace mtkit::pipeline {

namespace {

struct Span {
  std::size_t begin;
  std::size_t end;
  EntityKind kind;
};

bool is_space_byte(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; }

// Code point ending just before `pos`, or 0 at the start.
char32_t code_point_before(std::string_view text, std::size_t pos) {
  if (pos == 0) return 0;
  std::size_t start = pos - 1;
  while (start > 0 && (static_cast<unsigned char>(text[start]) & 0xC0) == 0x80) --start;
  std::size_t p = start;
  return unicode::next_code_point(text, p);
}

char32_t code_point_at(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return 0;
  return unicode::next_code_point(text, pos);
}

bool starts_with_ci(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char a = text[pos + i];
    if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
    if (a != prefix[i]) return false;
  }
  return true;
}

void find_urls(std::string_view text, std::vector<Span>& out) {
  static constexpr std::array<std::string_view, 4> kPrefixes = {"https://", "http://",
                                                                "ftp://", "www."};
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    std::size_t prefix_len = 0;
    for (auto prefix : kPrefixes) {
      if (starts_with_ci(text, pos, prefix)) {
        prefix_len = prefix.size();
        break;
      }
    }
    if (prefix_len == 0) continue;
    if (unicode::is_alnum(code_point_before(text, pos))) continue;
    std::size_t end = pos + prefix_len;
    while (end < text.size() && !is_space_byte(text[end]) && text[end] != '<' &&
           text[end] != '>' && text[end] != '"' &&
           text.compare(end, kPlaceholderOpen.size(), kPlaceholderOpen) != 0) {
      ++end;
    }
    // Trailing sentence punctuation is not part of the URL; a closing paren
    // is kept only when it balances one inside the URL.
    while (end > pos + prefix_len) {
      char c = text[end - 1];
      if (c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == '\'') {
        --end;
        continue;
      }
      if (c == ')' || c == ']') {
        char open = c == ')' ? '(' : '[';
        auto body = text.substr(pos, end - pos);
        if (std::count(body.begin(), body.end(), open) < std::count(body.begin(), body.end(), c)) {
          --end;
          continue;
        }
      }
      break;
    }
    if (end == pos + prefix_len) continue;
    out.push_back({pos, end, EntityKind::URL});
    pos = end - 1;
  }
}

void find_tags(std::string_view text, std::vector<Span>& out) {
  for (std::size_t pos = 0; pos + 2 < text.size(); ++pos) {
    if (text[pos] != '<') continue;
    char first = text[pos + 1];
    bool opener = (first >= 'a' && first <= 'z') || (first >= 'A' && first <= 'Z') ||
                  first == '/' || first == '!';
    if (!opener) continue;
    std::size_t end = pos + 1;
    while (end < text.size() && text[end] != '>' && text[end] != '<' && text[end] != '\n') ++end;
    if (end < text.size() && text[end] == '>') {
      out.push_back({pos, end + 1, EntityKind::TAG});
      pos = end;
    }
  }
}

void find_glossary_terms(std::string_view text, const Glossary& glossary,
                         std::vector<Span>& out) {
  for (const auto& term : glossary.terms) {
    if (term.empty()) continue;
    std::size_t pos = 0;
    while ((pos = text.find(term, pos)) != std::string_view::npos) {
      std::size_t end = pos + term.size();
      bool left_ok = !unicode::is_alnum(code_point_before(text, pos));
      bool right_ok = !unicode::is_alnum(code_point_at(text, end));
      if (left_ok && right_ok) out.push_back({pos, end, EntityKind::DNT});
      ++pos;
    }
  }
}

}  // namespace

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::URL: return "URL";
    case EntityKind::TAG: return "TAG";
    case EntityKind::DNT: return "DNT";
  }
  return "UNK";
}

const Placeholder* PlaceholderMap::find(std::string_view token) const {
  for (const auto& e : entries) {
    if (e.token == token) return &e;
  }
  return nullptr;
}

std::size_t placeholder_length_at(std::string_view text, std::size_t pos) {
  if (text.compare(pos, kPlaceholderOpen.size(), kPlaceholderOpen) != 0) return 0;
  std::size_t i = pos + kPlaceholderOpen.size();
  std::size_t kind_start = i;
  while (i < text.size() && text[i] >= 'A' && text[i] <= 'Z') ++i;
  if (i == kind_start || i >= text.size() || text[i] != '-') return 0;
  ++i;
  std::size_t digits = i;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
  if (i == digits) return 0;
  if (text.compare(i, kPlaceholderClose.size(), kPlaceholderClose) != 0) return 0;
  return i + kPlaceholderClose.size() - pos;
}

bool is_placeholder(std::string_view token) {
  return !token.empty() && placeholder_length_at(token, 0) == token.size();
}

MaskedText mask_entities(std::string_view text, const Glossary& glossary,
                         std::string document_id) {
  std::vector<Span> candidates;
  find_urls(text, candidates);
  find_tags(text, candidates);
  find_glossary_terms(text, glossary, candidates);

  std::sort(candidates.begin(), candidates.end(), [](const Span& a, const Span& b) {
    auto la = a.end - a.begin, lb = b.end - b.begin;
    if (la != lb) return la > lb;
    if (a.begin != b.begin) return a.begin < b.begin;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });
  std::vector<Span> accepted;
  for (const auto& c : candidates) {
    bool overlaps = std::any_of(accepted.begin(), accepted.end(), [&](const Span& a) {
      return c.begin < a.end && a.begin < c.end;
    });
    if (!overlaps) accepted.push_back(c);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Span& a, const Span& b) { return a.begin < b.begin; });

  MaskedText result;
  result.map.document_id = std::move(document_id);
  std::map<EntityKind, int> counters;
  std::vector<std::size_t> offsets;  // placeholder start offsets in the output
  std::size_t cursor = 0;
  for (const auto& span : accepted) {
    result.text.append(text.substr(cursor, span.begin - cursor));
    Placeholder ph;
    ph.kind = span.kind;
    ph.original = std::string(text.substr(span.begin, span.end - span.begin));
    ph.token = std::string(kPlaceholderOpen) + std::string(to_string(span.kind)) + "-" +
               std::to_string(++counters[span.kind]) + std::string(kPlaceholderClose);
    offsets.push_back(result.text.size());
    result.text += ph.token;
    result.map.entries.push_back(std::move(ph));
    cursor = span.end;
  }
  result.text.append(text.substr(cursor));

  for (std::size_t i = 0; i < offsets.size(); ++i) {
    auto& ph = result.map.entries[i];
    std::size_t begin = offsets[i];
    std::size_t end = begin + ph.token.size();
    ph.glued_left = begin > 0 && !is_space_byte(result.text[begin - 1]);
    ph.glued_right = end < result.text.size() && !is_space_byte(result.text[end]);
  }
  return result;
}

ReinstatementError::ReinstatementError(std::vector<std::string> orphans)
    : Error([&] {
        std::string msg = "cannot reinstate placeholders missing from the map:";
        for (const auto& o : orphans) msg += " " + o;
        return msg;
      }()),
      orphans_(std::move(orphans)) {}

std::string unmask_entities(std::string_view text, const PlaceholderMap& map) {
  std::string out;
  out.reserve(text.size());
  std::vector<std::string> orphans;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = placeholder_length_at(text, pos);
    if (len == 0) {
      out += text[pos++];
      continue;
    }
    auto token = text.substr(pos, len);
    if (const auto* ph = map.find(token)) {
      out += ph->original;
    } else {
      if (std::find(orphans.begin(), orphans.end(), token) == orphans.end()) {
        orphans.emplace_back(token);
      }
    }
    pos += len;
  }
  if (!orphans.empty()) throw ReinstatementError(std::move(orphans));
  return out;
}

}  // namespace mtkit::pipeline
