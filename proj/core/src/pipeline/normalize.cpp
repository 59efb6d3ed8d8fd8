#include "mtkit/pipeline/normalize.hpp"

#include "mtkit/unicode.hpp"

namespace mtkit::pipeline {

std::string normalize_chars(std::string_view text, Lang /*lang*/,
                            const NormalizationTable& table) {
  const std::string composed = unicode::nfc(text);
  std::u32string mapped;
  mapped.reserve(composed.size());
  std::size_t pos = 0;
  while (pos < composed.size()) {
    char32_t cp = unicode::next_code_point(composed, pos);
    if (const auto* repl = table.find(cp)) {
      mapped.append(*repl);
    } else {
      mapped.push_back(cp);
    }
  }

  std::u32string out;
  out.reserve(mapped.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    char32_t cp = mapped[i];
    if (cp == U'\r') {
      if (i + 1 < mapped.size() && mapped[i + 1] == U'\n') ++i;
      cp = U'\n';
    }
    if (cp == U'\n') {
      out.push_back(U'\n');
      pending_space = false;
      continue;
    }
    if (cp == U' ' || cp == U'\t' || cp == U'\f' || cp == U'\v') {
      if (!out.empty() && out.back() != U'\n') pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(cp);
  }
  // A deletion may have exposed a composable sequence.
  return unicode::nfc(unicode::encode(out));
}

}  // namespace mtkit::pipeline
