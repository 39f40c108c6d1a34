#include <gtest/gtest.h>

#include "codedloops/algebra.hpp"
#include "codedloops/error.hpp"

using namespace codedloops;

TEST(Residue, FloorModAndInverse) {
  EXPECT_EQ(mod_floor(-1, 3), 2);
  EXPECT_EQ(mod_floor(7, 7), 0);
  for (int p : {2, 3, 5, 7, 11}) {
    for (int a = 1; a < p; ++a) EXPECT_EQ(mod_floor(a * inverse_mod_prime(a, p), p), 1);
  }
}

TEST(Residue, ArithmeticAndMismatch) {
  const Residue a(5, 7), b(4, 7);
  EXPECT_EQ((a + b).value(), 2);
  EXPECT_EQ((a - b).value(), 1);
  EXPECT_EQ((a * b).value(), 6);
  EXPECT_EQ((-a).value(), 2);
  EXPECT_THROW(a + Residue(1, 5), InvalidArgument);
}

TEST(Residue, CheckedPow) {
  EXPECT_EQ(checked_pow(3, 4), 81u);
  EXPECT_FALSE(checked_pow(2, 64).has_value());
  EXPECT_FALSE(checked_pow(3, 8, 1000).has_value());
}

TEST(FpVector, RankRoundTripIsLexicographic) {
  const std::vector<int> moduli{4, 2, 3};
  const auto all = all_vectors(moduli);
  ASSERT_EQ(all.size(), 24u);
  for (std::size_t r = 0; r < all.size(); ++r) {
    EXPECT_EQ(all[r].rank(), r);
    EXPECT_EQ(FpVector::from_rank(r, moduli), all[r]);
    if (r > 0) EXPECT_LT(all[r - 1], all[r]);
  }
}

TEST(FpVector, SlotwiseOperations) {
  const auto a = FpVector::uniform({1, 2, 0}, 3);
  const auto b = FpVector::uniform({2, 2, 1}, 3);
  EXPECT_EQ(a + b, FpVector::uniform({0, 1, 1}, 3));
  EXPECT_EQ(a - b, FpVector::uniform({2, 0, 2}, 3));
  EXPECT_EQ(-a, FpVector::uniform({2, 1, 0}, 3));
  EXPECT_EQ(a.scaled(2), FpVector::uniform({2, 1, 0}, 3));
  EXPECT_THROW(a + FpVector::zero(2, 3), InvalidArgument);
}

TEST(FpMatrix, InverseAndRank) {
  FpMatrix m(3, 5, {1, 2, 0, 0, 1, 3, 4, 0, 2});
  ASSERT_TRUE(m.is_invertible());
  const auto inv = m.inverse();
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(m * *inv, FpMatrix::identity(3, 5));
  FpMatrix singular(2, 3, {1, 2, 2, 1});
  EXPECT_EQ(singular.rank(), 1u);
  EXPECT_FALSE(singular.inverse().has_value());
}

TEST(FpMatrix, SpanHelpers) {
  const std::vector<FpVector> vs{FpVector::uniform({1, 1, 0}, 2), FpVector::uniform({0, 1, 1}, 2),
                                 FpVector::uniform({1, 0, 1}, 2)};
  EXPECT_EQ(span_dimension(vs, 2), 2u);
  EXPECT_TRUE(in_span(span_basis(vs, 2), FpVector::uniform({1, 0, 1}, 2), 2));
  EXPECT_FALSE(in_span(span_basis(vs, 2), FpVector::uniform({1, 0, 0}, 2), 2));
}

TEST(FpMatrix, InvertibleEnumerationMatchesGroupOrder) {
  for (auto [k, p] : {std::pair<std::size_t, int>{2, 2}, {3, 2}, {2, 3}, {2, 5}}) {
    std::uint64_t n = 0;
    for (const auto& m : enumerate_invertible(k, p)) {
      EXPECT_TRUE(m.is_invertible());
      ++n;
    }
    EXPECT_EQ(n, gl_order(k, p)) << "k=" << k << " p=" << p;
  }
  EXPECT_EQ(gl_order(3, 2), 168u);
  EXPECT_THROW(enumerate_invertible(6, 3), BudgetExceeded);
}
