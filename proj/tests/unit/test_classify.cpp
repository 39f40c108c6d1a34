#include <gtest/gtest.h>

#include "codedloops/classify.hpp"
#include "codedloops/error.hpp"

using namespace codedloops;

TEST(Classify, DimensionThreeExponentThree) {
  ClassifyOptions o;
  o.p = 3;
  o.dim = 3;
  o.exponent = 3;
  o.nonassociative = true;
  const auto full = classify_cvs(o);
  EXPECT_EQ(full.tables, 54u);
  EXPECT_EQ(full.classes.size(), 2u);
  EXPECT_EQ(full.isotopy_classes, 1u);
  // One commutative class, one with a one-dimensional commutator radical.
  EXPECT_TRUE(full.classes[0].invariants.chi_trivial);
  EXPECT_EQ(full.classes[1].invariants.rad_chi_dim, 1u);

  o.prune_alpha = true;
  const auto pruned = classify_cvs(o);
  EXPECT_EQ(pruned.alpha_classes, 1u);
  EXPECT_EQ(pruned.classes.size(), full.classes.size());
  EXPECT_EQ(pruned.isotopy_classes, full.isotopy_classes);
}

TEST(Classify, AlphaIsUniqueInDimensionFour) {
  const auto reps = alpha_classes(3, 4);
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_EQ(rad_alpha(reps[0]).size(), 1u);
}

TEST(Classify, SmallCasesWithoutPruning) {
  // F_3^2, any exponent: 9 sigma tables times 3 chi tables, no alpha.
  ClassifyOptions o;
  o.p = 3;
  o.dim = 2;
  const auto r = classify_cvs(o);
  EXPECT_EQ(r.tables, 27u);
  std::uint64_t members = 0;
  for (const auto& c : r.classes) members += c.members;
  EXPECT_EQ(members, r.tables);
  EXPECT_EQ(r.isotopy_classes, r.classes.size());  // alpha = 0: translates are trivial
}

TEST(Classify, CharacteristicTwoExponentFilter) {
  ClassifyOptions o;
  o.p = 2;
  o.dim = 2;
  o.exponent = 2;
  EXPECT_EQ(classify_cvs(o).classes.size(), 1u);  // only the elementary abelian group
  o.exponent = 4;
  // Loops of order 8 and exponent 4 with central Z of order 2: C4 x C2, D8, Q8.
  EXPECT_EQ(classify_cvs(o).classes.size(), 3u);
}

TEST(Classify, RejectsBadOptions) {
  ClassifyOptions o;
  o.p = 4;
  EXPECT_THROW(classify_cvs(o), InvalidArgument);
  o.p = 3;
  o.exponent = 27;
  EXPECT_THROW(classify_cvs(o), InvalidArgument);
  o.exponent = 3;
  o.dim = 5;
  o.max_tables = 100;
  EXPECT_THROW(classify_cvs(o), BudgetExceeded);
}
