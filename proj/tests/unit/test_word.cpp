#include <gtest/gtest.h>

#include "codedloops/error.hpp"
#include "codedloops/word.hpp"
#include "corpus.hpp"

using namespace codedloops;

TEST(Word, ParsesAndRendersRoundTrip) {
  for (const char* text : {"g1", "z", "(g1*g2)", "((g1*g2)*g3)", "g1^-3", "[g1,g2]", "[(g1*g2),g3,z]", "[g1,g2]^2"}) {
    const Word w = parse_word(text);
    EXPECT_EQ(parse_word(render_word(w)), w) << text;
  }
  EXPECT_EQ(render_word(parse_word(" g1 * ( g2*g3 ) ")), "(g1*(g2*g3))");
}

TEST(Word, UnparenthesizedTripleProductsNeedLeftAssoc) {
  try {
    parse_word("g1*g2*g3");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 6u);
  }
  EXPECT_EQ(parse_word("g1*g2*g3", {true}), parse_word("((g1*g2)*g3)"));
}

TEST(Word, MalformedInputReportsColumns) {
  const std::vector<std::pair<const char*, std::size_t>> cases{
      {"g0", 2}, {"(g1*g2", 7}, {"[g1]", 4}, {"g1^", 4}, {"x", 1}, {"g1 g2", 4}};
  for (auto [text, col] : cases) {
    try {
      parse_word(text);
      FAIL() << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.column(), col) << text;
    }
  }
  EXPECT_EQ(caret_diagnostic("g1 g2", 4, "unexpected"), "g1 g2\n   ^ unexpected");
}

TEST(Word, OctonionEvaluation) {
  const CodedLoop loop = build(octonion_cvs());
  auto nf = [&](const char* s) { return normal_form_string(parse_word(s), loop); };
  EXPECT_EQ(nf("[g1,g2,g3]"), "z");
  EXPECT_EQ(nf("[g1,g2]"), "z");
  EXPECT_EQ(nf("g1^2"), "z");
  EXPECT_EQ(nf("g1^4"), "1");
  EXPECT_EQ(nf("(g1*(g2*g3))"), "g1(g2(g3))");
  EXPECT_EQ(nf("((g1*g2)*g3)"), "z g1(g2(g3))");
  EXPECT_EQ(nf("(g3*g1)"), "z g1(g3)");
  EXPECT_THROW(nf("g4"), InvalidArgument);
}

TEST(Word, NormalFormStrings) {
  EXPECT_EQ(normal_form_string(NormalForm{0, {0, 0}}), "1");
  EXPECT_EQ(normal_form_string(NormalForm{2, {0, 0}}), "z^2");
  EXPECT_EQ(normal_form_string(NormalForm{0, {2, 0, 1}}), "g1^2(g3)");
  EXPECT_EQ(normal_form_string(NormalForm{1, {1, 1, 2}}), "z g1(g2(g3^2))");
}

TEST(Word, NormalFormMatchesEvaluation) {
  const CodedLoop loop = build(corpus::cml81());
  for (std::uint64_t i = 0; i < loop.order(); ++i) {
    const auto a = loop.element_at(i);
    const auto nf = normal_form(loop, a);
    std::string text = "(z^" + std::to_string(nf.z) + "*";
    std::string tail = "g3^" + std::to_string(nf.exponents[2]);
    tail = "(g2^" + std::to_string(nf.exponents[1]) + "*" + tail + ")";
    tail = "(g1^" + std::to_string(nf.exponents[0]) + "*" + tail + ")";
    text += tail + ")";
    ASSERT_EQ(eval_word(parse_word(text), loop), a) << text;
  }
}
