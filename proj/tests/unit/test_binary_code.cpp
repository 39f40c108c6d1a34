#include <gtest/gtest.h>

#include "codedloops/binary_code.hpp"
#include "codedloops/error.hpp"
#include "oracles.hpp"

using namespace codedloops;

TEST(BitVector, WeightsAndIntersections) {
  const auto a = BitVector::from_string("110110");
  const auto b = BitVector::from_string("011011");
  EXPECT_EQ(weight(a), 4u);
  EXPECT_EQ(intersect2(a, b), 2u);
  EXPECT_EQ(intersect3(a, b, BitVector::from_string("010010")), 2u);
  EXPECT_EQ((a ^ b).to_string(), "101101");
  EXPECT_EQ(a.concat(b).size(), 12u);
}

TEST(BinaryCode, HammingCodeGivesTheOctonionCvs) {
  const BinaryCode h = builtin_hamming734();
  EXPECT_EQ(h.length(), 7u);
  EXPECT_EQ(h.dim(), 3u);
  EXPECT_TRUE(is_doubly_even(h));
  EXPECT_EQ(code_to_cvs(h), octonion_cvs());
}

TEST(BinaryCode, GolayParameters) {
  const BinaryCode g = builtin_golay24();
  EXPECT_EQ(g.length(), 24u);
  EXPECT_EQ(g.dim(), 12u);
  EXPECT_EQ(g.minimum_weight(), 8u);
  EXPECT_TRUE(is_doubly_even_exhaustive(g));
  const auto dist = g.weight_distribution();
  EXPECT_EQ(dist[0], 1u);
  EXPECT_EQ(dist[8], 759u);
  EXPECT_EQ(dist[12], 2576u);
  EXPECT_EQ(dist[16], 759u);
  EXPECT_EQ(dist[24], 1u);
}

TEST(BinaryCode, DoublyEvenTestsAgree) {
  const BinaryCode odd(4, {BitVector::from_string("1100")});
  EXPECT_FALSE(is_doubly_even(odd));
  EXPECT_FALSE(is_doubly_even_exhaustive(odd));
  // Generators of weight 4 whose sum has weight 6.
  const BinaryCode pair(8, {BitVector::from_string("11110000"), BitVector::from_string("10001110")});
  EXPECT_FALSE(is_doubly_even(pair));
  EXPECT_FALSE(is_doubly_even_exhaustive(pair));
}

TEST(BinaryCode, FormsMatchCodewordWeights) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Cvs cvs = random_cvs(2, 1 + seed % 4, seed);
    const BinaryCode code = cvs_to_code(cvs);
    ASSERT_TRUE(is_doubly_even_exhaustive(code));
    const Cvs back = code_to_cvs(code);
    EXPECT_EQ(back, cvs);
    const auto all = all_vectors(cvs.dim(), 2);
    for (const auto& c : all) {
      ASSERT_EQ(back.eval_sigma(c), oracle::code_sigma(code, c.coords()));
      for (const auto& d : all) {
        ASSERT_EQ(back.eval_chi(c, d), oracle::code_chi(code, c.coords(), d.coords()));
        for (const auto& e : all) {
          ASSERT_EQ(back.eval_alpha(c, d, e), oracle::code_alpha(code, c.coords(), d.coords(), e.coords()));
        }
      }
    }
    EXPECT_EQ(code.length(), cvs_to_code_length(cvs));
  }
}

TEST(BinaryCode, OctonionRealizationHasLength67) {
  const BinaryCode code = cvs_to_code(octonion_cvs());
  EXPECT_EQ(code.length(), 67u);
  EXPECT_EQ(code_to_cvs(code), octonion_cvs());
}

TEST(BinaryCode, CvsToCodeNeedsCharacteristicTwo) {
  EXPECT_THROW(cvs_to_code(random_cvs(3, 2, 0)), InvalidArgument);
}

TEST(BinaryCode, TextRoundTrip) {
  const BinaryCode g = builtin_golay24();
  const BinaryCode back = parse_code(emit_code(g));
  EXPECT_EQ(back.generators(), g.generators());
  EXPECT_THROW(parse_code("code\n1101\n11\n"), ParseError);
}
