#include <gtest/gtest.h>

#include <random>

#include "codedloops/coded_loop.hpp"
#include "codedloops/error.hpp"
#include "codedloops/loop_analysis.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace codedloops;

TEST(CodedLoop, CorpusExtensionsRealizeTheirCvs) {
  for (const auto& entry : corpus::entries()) {
    const CodedLoop loop = build(entry.cvs);
    const auto expected = *checked_pow(entry.cvs.p(), static_cast<unsigned>(entry.cvs.dim() + 1));
    EXPECT_EQ(loop.order(), expected) << entry.name;
    const auto report = verify_coded_extension(loop);
    EXPECT_TRUE(report.passed()) << entry.name << ": " << report.first_failure()->name;
    EXPECT_TRUE(is_moufang(to_table(loop))) << entry.name;
  }
}

TEST(CodedLoop, OctonionMatchesCayleyDickson) {
  const LoopTable built = to_table(build(octonion_cvs()));
  const LoopTable units = oracle::octonion_units();
  EXPECT_TRUE(oracle::moufang_naive(units));
  EXPECT_TRUE(brute_force_isomorphic(built, units).has_value());
}

TEST(CodedLoop, ElementOrdersInTheOctonionLoop) {
  const CodedLoop loop = build(octonion_cvs());
  int order4 = 0;
  for (std::uint64_t i = 0; i < loop.order(); ++i) order4 += loop.element_order(loop.element_at(i)) == 4;
  EXPECT_EQ(order4, 14);
}

TEST(CodedLoop, NormalFormRoundTrip) {
  for (const auto& entry : corpus::entries()) {
    const CodedLoop loop = build(entry.cvs);
    for (std::uint64_t i = 0; i < loop.order(); ++i) {
      const auto a = loop.element_at(i);
      ASSERT_EQ(from_normal_form(loop, normal_form(loop, a)), a) << entry.name;
      ASSERT_EQ(loop.index_of(a), i);
    }
  }
}

TEST(CodedLoop, TrivialIsotopeIsTheLoop) {
  const CodedLoop loop = build(corpus::sfm32());
  const CodedLoop iso = kappa_isotope(loop, FpVector::zero(4, 2));
  EXPECT_EQ(to_table(iso), to_table(loop));
}

TEST(CodedLoop, IsotopeCommutatorsAndAssociatorsForPThree) {
  const Cvs cvs = random_cvs(3, 3, 11);
  const CodedLoop loop = build(cvs);
  for (const auto& k : all_vectors(3, 3)) {
    const CodedLoop iso = kappa_isotope(loop, k);
    for (const auto& c : all_vectors(3, 3)) {
      for (const auto& d : all_vectors(3, 3)) {
        const auto comm = iso.commutator(iso.element(0, c), iso.element(0, d));
        ASSERT_TRUE(comm.v.is_zero());
        ASSERT_EQ(comm.z, mod_floor(cvs.eval_chi(c, d) - cvs.eval_alpha(c, k, d), 3));
      }
    }
    const auto e = all_vectors(3, 3);
    const auto a = iso.associator(iso.element(0, e[5]), iso.element(1, e[7]), iso.element(2, e[19]));
    EXPECT_EQ(a.z, cvs.eval_alpha(e[5], e[7], e[19]));
  }
}

TEST(CodedLoop, SdcpErrorSpecializations) {
  for (int p : {2, 3, 5}) {
    const Cvs cvs = random_cvs(p, 4, 5);
    std::mt19937_64 rng(p);
    for (int t = 0; t < 200; ++t) {
      auto v = [&] {
        std::vector<int> c(4);
        for (auto& x : c) x = static_cast<int>(rng() % p);
        return FpVector::uniform(c, p);
      };
      const auto d1 = v(), e1 = v(), d2 = v(), e2 = v();
      const int general = sdcp_error(cvs, d1, e1, d2, e2);
      if (p == 2) EXPECT_EQ(general, sdcp_error_p2(cvs, d1, e1, d2, e2));
      if (p == 3) EXPECT_EQ(general, sdcp_error_p3(cvs, d1, e1, d2, e2));
      if (p == 5) EXPECT_EQ(general, sdcp_error_large_p(cvs, d1, e1, d2, e2));
    }
  }
}

TEST(CodedLoop, SemidirectCentralProductGluesSubextensions) {
  for (const Cvs& ambient : {octonion_cvs(), corpus::cml81(), random_cvs(3, 3, 2)}) {
    const int p = ambient.p();
    const std::vector<FpVector> dv{ambient.basis_vector(0), ambient.basis_vector(1)};
    const std::vector<FpVector> ev{ambient.basis_vector(2)};
    const CodedLoop d = build(restrict_to(ambient, dv));
    const CodedLoop e = build(restrict_to(ambient, ev));
    const CodedLoop glued = semidirect_central_product(d, e, ambient, dv, ev);
    EXPECT_EQ(glued.order(), static_cast<std::uint64_t>(p * p * p * p));
    EXPECT_TRUE(verify_coded_extension(glued, ambient).passed());
    EXPECT_TRUE(brute_force_isomorphic(to_table(glued), to_table(build(ambient))).has_value());
  }
}

TEST(CodedLoop, TableBudget) {
  EXPECT_THROW(to_table(build(random_cvs(2, 9, 1)), 512), BudgetExceeded);
}
