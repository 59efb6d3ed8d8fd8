#include <gtest/gtest.h>

#include "mtkit/errors.hpp"
#include "mtkit/hash.hpp"
#include "mtkit/language.hpp"
#include "mtkit/text_io.hpp"
#include "mtkit/unicode.hpp"
#include "temp_dir.hpp"

using namespace mtkit;
namespace mt = mtkit::testing;

TEST(Language, ParsesCodesAndPairs) {
  EXPECT_EQ(parse_lang("de"), Lang::de);
  EXPECT_FALSE(parse_lang("xx"));
  EXPECT_THROW(lang_from_string("pt"), ConfigError);
  auto pair = pair_from_string("it-en");
  EXPECT_EQ(pair.source, Lang::it);
  EXPECT_EQ(pair.target, Lang::en);
  EXPECT_EQ(to_string(pair), "it-en");
  EXPECT_EQ(parse_pair("de->en"), pair_from_string("de-en"));
  EXPECT_FALSE(parse_pair("deen"));
  EXPECT_FALSE(parse_pair("de-xx"));
}

TEST(Language, ServesTheEightEnglishPairs) {
  std::size_t count = 0;
  for (Lang s : kAllLangs) {
    for (Lang t : kAllLangs) {
      LanguagePair p{s, t};
      bool expected = s != t && (s == Lang::en || t == Lang::en);
      EXPECT_EQ(is_supported(p), expected) << to_string(p);
      count += expected;
    }
  }
  EXPECT_EQ(count, 8u);
  for (const auto& p : supported_pairs()) EXPECT_TRUE(is_supported(p));
}

TEST(Unicode, CodePointsAndCase) {
  EXPECT_EQ(unicode::length("Übergrößen"), 10u);
  EXPECT_EQ(unicode::characters("aé").size(), 2u);
  EXPECT_EQ(unicode::to_lower("ÉTÉ Straße"), "été straße");
  EXPECT_EQ(unicode::upper_first("école"), "École");
  EXPECT_EQ(unicode::nfc("é"), "é");
  EXPECT_TRUE(unicode::is_nfc("é"));
  EXPECT_FALSE(unicode::is_nfc("é"));
  EXPECT_EQ(unicode::find_invalid_utf8("ok\xff"), 2u);
  EXPECT_FALSE(unicode::find_invalid_utf8("ok"));
  EXPECT_EQ(unicode::count_tokens("  a \t b\nc "), 3u);
}

TEST(TextIo, NormalizesLineEndings) {
  auto lines = split_lines("a\r\nb\rc\nd");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[1], "b");
  EXPECT_EQ(lines[3], "d");
  EXPECT_EQ(split_lines("a\n").size(), 1u);
}

TEST(TextIo, ReportsInvalidUtf8WithLineNumber) {
  mt::TempDir dir;
  write_file(dir / "bad.txt", "fine\nbad \xc3\x28 here\n");
  try {
    read_lines(dir / "bad.txt");
    FAIL() << "expected EncodingError";
  } catch (const EncodingError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(read_lines(dir / "missing.txt"), IoError);
}

TEST(TextIo, WriteReadRoundTrip) {
  mt::TempDir dir;
  std::vector<std::string> lines = {"eins", "", "drei ü"};
  write_lines(dir / "x.txt", lines);
  EXPECT_EQ(read_lines(dir / "x.txt"), lines);
}

TEST(Hash, KnownFnvValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
  EXPECT_NE(splitmix64(1), splitmix64(2));
}
