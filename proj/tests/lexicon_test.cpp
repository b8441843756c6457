/*
 * Copyright 2026 The stylex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "stylex/corpus.hpp"
#include "stylex/error.hpp"
#include "stylex/lexicon.hpp"
#include "support.hpp"

namespace stylex {
namespace {

using testing::Gen;
namespace oracle = testing::oracle;

Lexicon Gratitude() {
  return {"en", {{"Gratitude", {"thanks", "thank you", "i appreciate"}}}};
}

std::vector<std::pair<std::size_t, std::size_t>> Spans(
    const std::vector<TermMatch>& ms) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& m : ms) out.emplace_back(m.char_start, m.char_end);
  return out;
}

using SpanList = std::vector<std::pair<std::size_t, std::size_t>>;

TEST(Match, PunctuatedGratitude) {
  const auto ms = Match(Gratitude(), "Thanks — thank you!",
                        Segmentation::kWhitespace);
  EXPECT_EQ(Spans(ms), (SpanList{{0, 6}, {9, 18}}));
  EXPECT_EQ(ms[0].term, "thanks");
  EXPECT_EQ(ms[1].term, "thank you");
  EXPECT_EQ(ms[1].category, "Gratitude");
}

TEST(Match, ChineseSubstring) {
  const Lexicon zh{"zh", {{"Gratitude", {"谢谢"}}}};
  const auto ms = Match(zh, "谢谢你", Segmentation::kSubstring);
  EXPECT_EQ(Spans(ms), (SpanList{{0, 2}}));
}

TEST(Match, CaseInsensitiveWholeTokens) {
  const Lexicon lex{"en", {{"G", {"hi", "thanks"}}}};
  EXPECT_EQ(Match(lex, "HI there, THANKS", Segmentation::kWhitespace).size(), 2u);
  EXPECT_TRUE(Match(lex, "this is history", Segmentation::kWhitespace).empty());
  EXPECT_TRUE(Match(lex, "thankfulness", Segmentation::kWhitespace).empty());
  // Substring mode is exact and ignores token boundaries.
  EXPECT_EQ(Match(lex, "history", Segmentation::kSubstring).size(), 1u);
  EXPECT_TRUE(Match(lex, "HI", Segmentation::kSubstring).empty());
}

TEST(Match, PunctuationIsItsOwnToken) {
  const Lexicon lex{"en", {{"Indirect", {"btw", "by the way"}}}};
  EXPECT_EQ(Spans(Match(lex, "btw, ok", Segmentation::kWhitespace)),
            (SpanList{{0, 3}}));
  EXPECT_TRUE(Match(lex, "by-the-way", Segmentation::kWhitespace).empty());
  EXPECT_EQ(Spans(Match(lex, "By  the\tway.", Segmentation::kWhitespace)),
            (SpanList{{0, 11}}));
}

TEST(Match, LongestTermWinsWithinCategory) {
  const Lexicon lex{"en", {{"G", {"thank", "thank you", "you"}}}};
  const auto ms = Match(lex, "thank you you", Segmentation::kWhitespace);
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[0].term, "thank you");
  EXPECT_EQ(ms[1].term, "you");
  EXPECT_EQ(ms[1].char_start, 10u);
}

TEST(Match, CategoriesMayOverlap) {
  const Lexicon lex{"en", {{"1st", {"i"}}, {"Gratitude", {"i appreciate"}}}};
  const auto ms = Match(lex, "I appreciate it", Segmentation::kWhitespace);
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_EQ(ms[0].category, "1st");
  EXPECT_EQ(ms[1].category, "Gratitude");
  EXPECT_EQ(Spans(ms), (SpanList{{0, 1}, {0, 12}}));
}

TEST(Match, OffsetsReferToTheTextAsGiven) {
  const Lexicon lex{"es", {{"Hedges", {"señala"}}}};
  // Decomposed ñ: the match spans 7 code points of the input.
  const auto ms = Match(lex, "\xc3\xa9l sen\xcc\x83" "ala", Segmentation::kWhitespace);
  EXPECT_EQ(Spans(ms), (SpanList{{3, 10}}));
  // Decomposed term against composed text.
  const Lexicon lex2{"es", {{"Hedges", {"sen\xcc\x83" "ala"}}}};
  EXPECT_EQ(Spans(Match(lex2, "señala", Segmentation::kWhitespace)),
            (SpanList{{0, 6}}));
}

TEST(Match, SubstringTermsIgnoreSurroundingBlanks) {
  const Lexicon lex{"ja", {{"Please", {" ください "}}}};
  EXPECT_EQ(Spans(Match(lex, "見てください。", Segmentation::kSubstring)),
            (SpanList{{2, 6}}));
}

TEST(Match, AgreesWithReferenceOnRandomInputs) {
  Gen g(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto lex = testing::RandomLexicon(g, g.Range(1, 4), 6);
    const auto seg =
        g.Coin(0.7) ? Segmentation::kWhitespace : Segmentation::kSubstring;
    const LexiconMatcher matcher(lex, seg);
    for (int u = 0; u < 5; ++u) {
      const std::string text = g.Sentence(g.Range(0, 12));
      const auto got = matcher.Match(text);
      EXPECT_EQ(got, oracle::Match(lex, text, seg)) << text;
      EXPECT_EQ(matcher.Covers(text), !got.empty());
    }
  }
}

TEST(Match, OffsetsSliceTheSurfaceForm) {
  Gen g(37);
  for (int trial = 0; trial < 300; ++trial) {
    const auto lex = testing::RandomLexicon(g, g.Range(1, 4), 6);
    const auto seg =
        g.Coin(0.7) ? Segmentation::kWhitespace : Segmentation::kSubstring;
    std::string text = g.Sentence(g.Range(0, 12));
    if (g.Coin(0.5)) {
      for (char& c : text) {
        if (g.Coin(0.3)) c = static_cast<char>(std::toupper(c));
      }
    }
    const auto cps = unicode::Decode(text);
    for (const auto& m : Match(lex, text, seg)) {
      ASSERT_LT(m.char_start, m.char_end);
      ASSERT_LE(m.char_end, cps.size());
      const std::string slice = unicode::Encode(
          cps.substr(m.char_start, m.char_end - m.char_start));
      if (seg == Segmentation::kSubstring) {
        EXPECT_EQ(slice, m.term);
        continue;
      }
      std::vector<std::u32string> a, b;
      for (const auto& u : oracle::Units(slice, seg)) a.push_back(u.key);
      for (const auto& u : oracle::Units(m.term, seg)) b.push_back(u.key);
      EXPECT_EQ(a, b) << slice << " vs " << m.term;
    }
  }
}

TEST(Lexicon, PoliteLexFixture) {
  const auto lex = LoadLexiconFile(testing::FixtureDir() / "politelex.en.json");
  EXPECT_EQ(lex.language, "en");
  EXPECT_EQ(lex.categories.size(), 26u);
  const Category* g = lex.Find("Gratitude");
  ASSERT_NE(g, nullptr);
  EXPECT_EQ(g->terms,
            (std::vector<std::string>{"thanks", "thank you", "i appreciate"}));
  EXPECT_NE(lex.Find("Direct \"You\""), nullptr);
  EXPECT_EQ(lex.CategoryNames().front(), "Gratitude");
}

TEST(Lexicon, CanonicalFilesRoundTrip) {
  for (const char* name :
       {"politelex.en.json", "mlc/seed.es.json", "aggregate/lexicon.zh.json",
        "coverage/lexicon.en.json"}) {
    const auto path = testing::FixtureDir() / name;
    const std::string text = testing::Slurp(path);
    const auto lex = LoadLexicon(text);
    EXPECT_EQ(SaveLexicon(lex), text) << name;
    EXPECT_EQ(LoadLexicon(SaveLexicon(lex)), lex) << name;
  }
}

TEST(Lexicon, RoundTripsRandomLexica) {
  Gen g(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto lex = testing::RandomLexicon(g, g.Range(0, 6), 8);
    EXPECT_EQ(LoadLexicon(SaveLexicon(lex)), lex);
  }
}

TEST(Lexicon, RejectsMalformedDocuments) {
  const char* bad[] = {
      R"({"language": "en", "categories": {"A": ["x"], "A": ["y"]}})",
      R"({"language": "en", "categories": {"A": ["x", ""]}})",
      R"({"language": "en", "categories": {"A": ["x", "  "]}})",
      R"({"language": "en", "categories": {"A": ["x", "x"]}})",
      R"({"language": "en", "categories": {"A": ["se\u00f1ala", "sen\u0303ala"]}})",
      R"({"language": "en", "categories": {"A": "x"}})",
      R"({"language": "en", "categories": {"A": [1]}})",
      R"({"language": "en", "categories": ["A"]})",
      R"({"language": "en", "categories": {}, "extra": 1})",
      R"({"categories": {"A": ["x"]}})",
      R"([])",
      R"({"language": "en", "categories": {"A": ["x"]})",
  };
  for (const char* doc : bad) {
    EXPECT_THROW(LoadLexicon(doc), FormatError) << doc;
  }
  EXPECT_THROW(LoadLexiconFile("/nonexistent/lexicon.json"), IoError);
}

TEST(Lexicon, SameTermInTwoCategoriesIsFine) {
  const auto lex = LoadLexicon(
      R"({"language": "en", "categories": {"A": ["you"], "B": ["you"]}})");
  EXPECT_EQ(lex.TermCount(), 2u);
}

TEST(Segmentation, Names) {
  EXPECT_EQ(ParseSegmentation("whitespace"), Segmentation::kWhitespace);
  EXPECT_EQ(ParseSegmentation("substring"), Segmentation::kSubstring);
  EXPECT_EQ(ToString(Segmentation::kSubstring), "substring");
  EXPECT_THROW(ParseSegmentation("jieba"), FormatError);
}

TEST(Coverage, FixtureIsSeventyPercent) {
  const auto lex =
      LoadLexiconFile(testing::FixtureDir() / "coverage/lexicon.en.json");
  for (const char* name : {"coverage/corpus.en.jsonl", "coverage/corpus.en.txt"}) {
    const auto corpus = LoadCorpusFile(testing::FixtureDir() / name);
    std::vector<std::string> texts;
    for (const auto& u : corpus) texts.push_back(u.text);
    ASSERT_EQ(texts.size(), 10u);
    for (std::size_t threads : {1u, 3u}) {
      const auto stat = Coverage(lex, texts, Segmentation::kWhitespace, threads);
      EXPECT_EQ(stat.covered, 7u);
      EXPECT_EQ(stat.total, 10u);
      EXPECT_DOUBLE_EQ(stat.percent, 70.0);
    }
  }
}

TEST(Coverage, EmptyCorpusIsContractError) {
  EXPECT_THROW(Coverage(Gratitude(), {}, Segmentation::kWhitespace),
               ContractError);
}

TEST(Coverage, AddingTermsNeverLowersCoverage) {
  Gen g(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto seg =
        g.Coin(0.7) ? Segmentation::kWhitespace : Segmentation::kSubstring;
    auto lex = testing::RandomLexicon(g, g.Range(1, 3), 3);
    std::vector<std::string> corpus;
    for (std::size_t i = g.Range(1, 30); i > 0; --i) {
      corpus.push_back(g.Sentence(g.Range(0, 8)));
    }
    const auto before = Coverage(lex, corpus, seg);
    auto& terms = lex.categories[g.Index(lex.categories.size())].terms;
    const std::string extra = g.Word(1, 3);
    if (std::find(terms.begin(), terms.end(), extra) == terms.end()) {
      terms.push_back(extra);
    }
    const auto after = Coverage(lex, corpus, seg);
    EXPECT_GE(after.covered, before.covered);
  }
}

TEST(Corpus, DetectsFormats) {
  std::istringstream jsonl(
      "{\"id\": \"a\", \"text\": \"hi\"}\n\n{\"id\": \"b\", \"text\": \"yo\", "
      "\"score\": 1}\n");
  const auto a = LoadCorpus(jsonl);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[1].id, "b");
  std::istringstream plain("first line\r\n\nthird line\n");
  const auto b = LoadCorpus(plain);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].text, "first line");
  EXPECT_EQ(b[1].id, "3");
}

TEST(Corpus, MalformedJsonLineCarriesLineNumber) {
  std::istringstream in("{\"id\": \"a\", \"text\": \"x\"}\n{\"id\": \"b\"}\n");
  try {
    LoadCorpus(in);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Corpus, ScoredCorpusRange) {
  std::istringstream ok("{\"id\": \"a\", \"text\": \"x\", \"score\": -2}\n");
  EXPECT_EQ(LoadScoredCorpus(ok)[0].score, -2.0);
  std::istringstream high("{\"id\": \"a\", \"text\": \"x\", \"score\": 2.5}\n");
  EXPECT_THROW(LoadScoredCorpus(high), FormatError);
  std::istringstream missing("{\"id\": \"a\", \"text\": \"x\"}\n");
  EXPECT_THROW(LoadScoredCorpus(missing), FormatError);
  EXPECT_THROW(LoadScoredCorpusFile("/nonexistent/c.jsonl"), IoError);
  const auto fixture =
      LoadScoredCorpusFile(testing::FixtureDir() / "mlc/scored.es.jsonl");
  EXPECT_EQ(fixture.size(), 200u);
}

}  // namespace
}  // namespace stylex
