// Acceptance criteria AC1-AC12. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. Criteria can be selected by name: acceptance AC5 AC6.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "codedloops/algebra.hpp"
#include "codedloops/binary_code.hpp"
#include "codedloops/classify.hpp"
#include "codedloops/coded_loop.hpp"
#include "codedloops/coded_module.hpp"
#include "codedloops/cvs.hpp"
#include "codedloops/loop_analysis.hpp"
#include "corpus.hpp"

using namespace codedloops;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

// Collects failures; the first few are kept for the report line.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ < 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  Outcome done(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    return {false, std::to_string(failures_) + " failure(s): " + detail_};
  }

 private:
  int failures_ = 0;
  std::string detail_;
};

bool extraspecial(const LoopTable& t) {
  const auto p = loop_prime(t);
  const auto z = center(t);
  const auto phi = frattini(t);
  return p && is_moufang(t) && phi == z && z == derived_subloops(t).centrally_derived &&
         z.size() == static_cast<std::size_t>(*p);
}

// ---------------------------------------------------------------------------

Outcome ac1() {
  Checker c;
  const Cvs cvs = code_to_cvs(builtin_hamming734());
  const LoopTable t = to_table(build(cvs));
  c.expect(t.order() == 16, "order " + std::to_string(t.order()));
  c.expect(check_moufang(t).holds, "not Moufang");
  c.expect(!is_associative(t), "associative");
  const auto z = center(t);
  c.expect(z.size() == 2, "|Z| = " + std::to_string(z.size()));
  c.expect(nucleus(t).size() == 2, "|N| != 2");
  c.expect(frattini(t).size() == 2, "|Phi| != 2");
  int order4 = 0;
  for (std::size_t x = 0; x < t.order(); ++x) {
    if (!std::binary_search(z.begin(), z.end(), x)) order4 += element_order(t, x) == 4;
  }
  c.expect(order4 == 14, std::to_string(order4) + " elements of order 4 outside Z");
  c.expect(extraspecial(t), "not extraspecial");
  return c.done("order 16, Moufang, |Z|=|N|=|Phi|=2, 14 elements of order 4, extraspecial");
}

Outcome ac2() {
  Checker c;
  const Cvs oct = octonion_cvs();
  const BinaryCode code = cvs_to_code(oct);
  c.expect(code.length() == 67, "length " + std::to_string(code.length()));
  c.expect(is_doubly_even_exhaustive(code), "not doubly even");
  c.expect(code_to_cvs(code) == oct, "code_to_cvs differs from the input");
  return c.done("length 67, doubly even, round trip exact");
}

Outcome ac3() {
  Checker c;
  std::uint64_t tuples = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t k = 1 + seed % 5;
    const Cvs cvs = random_cvs(2, k, 1000 + seed);
    const BinaryCode code = cvs_to_code(cvs);
    c.expect(code_to_cvs(code) == cvs, "round trip seed " + std::to_string(seed));
    ValidationOptions all;
    all.tuple_limit = std::uint64_t{1} << 20;
    const auto r = validate_axioms(cvs, all);
    c.expect(r.passed() && r.exhaustive(), "evaluator identities seed " + std::to_string(seed));
    ValidationOptions weights;
    weights.tuple_limit = 32 * 32 * 32;
    weights.seed = seed;
    const auto w = validate_forms(code_forms(code), weights);
    c.expect(w.passed(), "code weight identities seed " + std::to_string(seed));
    for (const auto& chk : r.checks) tuples += chk.tuples;
  }
  return c.done("100 CVSs, round trips exact, " + std::to_string(tuples) + " exhaustive evaluator tuples");
}

Outcome ac4() {
  Checker c;
  const BinaryCode g = builtin_golay24();
  c.expect(g.length() == 24 && g.dim() == 12 && g.minimum_weight() == 8, "not [24,12,8]");
  c.expect(is_doubly_even_exhaustive(g), "not doubly even");
  const auto dist = g.weight_distribution();
  std::map<std::size_t, std::uint64_t> nonzero;
  for (std::size_t w = 0; w < dist.size(); ++w)
    if (dist[w]) nonzero[w] = dist[w];
  const std::map<std::size_t, std::uint64_t> expected{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
  c.expect(nonzero == expected, "weight distribution");
  const Cvs cvs = code_to_cvs(g);
  const CodedLoop loop = build(cvs);
  c.expect(loop.order() == 8192, "order " + std::to_string(loop.order()));
  ExtensionCheckOptions opts;
  opts.tuple_limit = 100000;
  opts.seed = 4;
  const auto ext = verify_coded_extension(loop, cvs, opts);
  c.expect(ext.passed(), "power/commute/associate");
  const auto mf = moufang_sampled(loop, 100000, 4);
  c.expect(mf.passed && mf.triples == 100000, "Moufang sample");
  bool found = false;
  std::string witness;
  for (std::size_t i = 0; i < 12 && !found; ++i)
    for (std::size_t j = i + 1; j < 12 && !found; ++j)
      for (std::size_t l = j + 1; l < 12 && !found; ++l) {
        const auto a = loop.associator(loop.generator(i), loop.generator(j), loop.generator(l));
        if (a != loop.identity()) {
          found = true;
          witness = "[x" + std::to_string(i + 1) + ",x" + std::to_string(j + 1) + ",x" + std::to_string(l + 1) + "]=z";
        }
      }
  c.expect(found, "no nontrivial associator");
  return c.done("[24,12,8], 1/759/2576/759/1, order 8192, 1e5 tuples and triples pass, " + witness);
}

Outcome ac5() {
  Checker c;
  ClassifyOptions o;
  o.p = 3;
  o.dim = 3;
  o.exponent = 3;
  o.nonassociative = true;
  const auto r = classify_cvs(o);
  c.expect(r.classes.size() == 2, std::to_string(r.classes.size()) + " isomorphism classes");
  c.expect(r.isotopy_classes == 1, std::to_string(r.isotopy_classes) + " isotopy classes");
  o.prune_alpha = true;
  const auto pruned = classify_cvs(o);
  c.expect(pruned.classes.size() == r.classes.size() && pruned.isotopy_classes == r.isotopy_classes,
           "pruned enumeration disagrees");
  return c.done("2 isomorphism classes, 1 isotopy class (pruned enumeration agrees)");
}

Outcome ac6() {
  Checker c;
  ClassifyOptions o;
  o.p = 3;
  o.dim = 4;
  o.exponent = 3;
  o.nonassociative = true;
  o.prune_alpha = true;
  const auto r = classify_cvs(o);
  c.expect(r.alpha_classes == 1, "alpha not unique");
  c.expect(r.classes.size() == 4, std::to_string(r.classes.size()) + " isomorphism classes");
  c.expect(r.isotopy_classes == 2, std::to_string(r.isotopy_classes) + " isotopy classes");
  // Label the classes (i)-(iv) by their invariants.
  std::map<std::string, std::size_t> isotopy;
  for (const auto& cls : r.classes) {
    const auto& v = cls.invariants;
    std::string label = "?";
    if (v.chi_trivial) label = "i";
    else if (v.rad_chi_dim == 0) label = "ii";
    else if (v.rad_chi_dim == 2 && v.rad_alpha_in_rad_chi) label = "iii";
    else if (v.rad_chi_dim == 2) label = "iv";
    c.expect(v.rad_alpha_dim == 1, "rad alpha not one-dimensional");
    c.expect(!isotopy.count(label), "duplicate class " + label);
    isotopy[label] = cls.isotopy_class;
  }
  c.expect(isotopy.size() == 4 && !isotopy.count("?"), "invariants do not match (i)-(iv)");
  if (isotopy.size() == 4) {
    c.expect(isotopy["i"] == isotopy["iii"] && isotopy["ii"] == isotopy["iv"] && isotopy["i"] != isotopy["ii"],
             "isotopy classes are not {i, iii} and {ii, iv}");
  }
  return c.done("4 isomorphism classes (i)-(iv), isotopy classes {i,iii} and {ii,iv}, alpha unique");
}

Outcome ac7() {
  Checker c;
  std::size_t loops = 0;
  for (const auto& entry : corpus::entries()) {
    const LoopTable t = to_table(build(entry.cvs));
    const auto cls = nilpotency_class(t);
    if (!cls || *cls > 2) continue;
    ++loops;
    const auto e = exponent(t, derived_subloops(t).nuclearly_derived);
    c.expect(6 % e == 0, entry.name + ": exp(L*) = " + std::to_string(e));
    if (entry.cvs.p() == 2) c.expect(2 % e == 0, entry.name + ": exp(L*) does not divide 2");
    if (entry.cvs.p() == 3) c.expect(3 % e == 0, entry.name + ": exp(L*) does not divide 3");
    if (entry.cvs.p() > 3) c.expect(e == 1, entry.name + ": L* nontrivial");
  }
  const Cvs p5 = random_cvs(5, 3, 7);
  c.expect(p5.has_trivial_alpha(), "alpha nonzero for p = 5");
  const CodedLoop loop = build(p5);
  c.expect(loop.order() == 625, "order");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t l = 0; l < 3; ++l)
        c.expect(loop.associator(loop.generator(i), loop.generator(j), loop.generator(l)) == loop.identity(),
                 "basis associator");
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> pick(0, loop.order() - 1);
  for (int n = 0; n < 1000000; ++n) {
    const auto x = loop.element_at(pick(rng)), y = loop.element_at(pick(rng)), z = loop.element_at(pick(rng));
    if (loop.mul(loop.mul(x, y), z) != loop.mul(x, loop.mul(y, z))) {
      c.expect(false, "nonassociative triple in the p = 5 loop");
      break;
    }
  }
  c.expect(is_associative(to_table(loop)), "p = 5 table not associative");
  return c.done(std::to_string(loops) + " corpus loops, p = 5 loop associative (1e6 samples, all triples)");
}

Outcome ac8() {
  Checker c;
  const LoopTable t = to_table(build(corpus::cml81()));
  c.expect(t.order() == 81 && is_commutative(t) && !is_associative(t) && exponent(t) == 3, "not the CML of order 81");
  std::string holds;
  for (int k = 1; k <= 6; ++k) {
    const bool h = mk_law_holds(t, k);
    c.expect(h == (k == 1 || k == 4), "M_" + std::to_string(k) + (h ? " holds" : " fails"));
    if (h) holds += (holds.empty() ? "" : ",") + std::to_string(k);
  }
  return c.done("M_k holds exactly for k in {" + holds + "}");
}

std::size_t p3_index(const Cvs& cvs) {
  // sigma_1..3, chi_12, chi_13, chi_23, alpha_123 as base-3 digits.
  const int digits[] = {cvs.sigma_basis(0), cvs.sigma_basis(1), cvs.sigma_basis(2), cvs.chi_basis(0, 1),
                        cvs.chi_basis(0, 2),  cvs.chi_basis(1, 2),  cvs.alpha_basis(0, 1, 2)};
  std::size_t r = 0;
  for (int d : digits) r = r * 3 + static_cast<std::size_t>(d);
  return r;
}

Cvs p3_cvs(std::size_t index) {
  CvsData d(3, 3);
  int digits[7];
  for (int i = 6; i >= 0; --i) {
    digits[i] = static_cast<int>(index % 3);
    index /= 3;
  }
  d.sigma = {digits[0], digits[1], digits[2]};
  d.chi_at(0, 1) = digits[3];
  d.chi_at(0, 2) = digits[4];
  d.chi_at(1, 2) = digits[5];
  d.alpha_at(0, 1, 2) = digits[6];
  return Cvs(std::move(d));
}

Outcome ac9() {
  Checker c;
  constexpr std::size_t kCount = 2187;
  std::vector<std::optional<LoopTable>> tables(kCount);
  auto table_of = [&](std::size_t i) -> const LoopTable& {
    if (!tables[i]) tables[i] = to_table(build(p3_cvs(i)));
    return *tables[i];
  };
  const auto vectors = all_vectors(3, 3);
  std::uint64_t pairs = 0;
  for (std::size_t idx = 0; idx < kCount; ++idx) {
    const Cvs cvs = p3_cvs(idx);
    if (p3_index(cvs) != idx) {
      c.expect(false, "CVS indexing");
      break;
    }
    const CodedLoop loop = build(cvs);
    for (const auto& kappa : vectors) {
      const LoopTable t = to_table(kappa_isotope(loop, kappa));
      // Elements z^a (0, c) sit at 27 a + rank(c).
      bool ok = true;
      for (const auto& x : vectors) {
        const std::size_t cx = x.rank();
        ok &= power(t, cx, 3) == 27 * static_cast<std::size_t>(cvs.eval_sigma(x));
        for (const auto& y : vectors) {
          const std::size_t cy = y.rank();
          const int chi = static_cast<int>(mod_floor(cvs.eval_chi(x, y) - cvs.eval_alpha(x, kappa, y), 3));
          ok &= commutator(t, cx, cy) == 27 * static_cast<std::size_t>(chi);
          for (const auto& w : vectors) {
            ok &= associator(t, cx, cy, w.rank()) == 27 * static_cast<std::size_t>(cvs.eval_alpha(x, y, w));
          }
        }
      }
      c.expect(ok, "isotope forms, CVS " + std::to_string(idx) + " kappa " + kappa.to_string());
      const Cvs adt = adjoint_translate(cvs, -kappa);
      c.expect(brute_force_isomorphic(t, table_of(p3_index(adt))).has_value(),
               "isotope not isomorphic to adt_{-k}, CVS " + std::to_string(idx) + " kappa " + kappa.to_string());
      ++pairs;
    }
  }
  return c.done(std::to_string(pairs) + " (CVS, kappa) pairs: forms exact, isotope ~ build(adt_{-k}(C))");
}

Outcome ac10() {
  Checker c;
  std::size_t count = 0;
  for (const Cvs& cvs : {octonion_cvs(), corpus::sfm32()}) {
    const CodedLoop loop = build(cvs);
    const LoopTable base = to_table(loop);
    for (const auto& kappa : all_vectors(cvs.dim(), 2)) {
      c.expect(brute_force_isomorphic(to_table(kappa_isotope(loop, kappa)), base).has_value(),
               "order " + std::to_string(loop.order()) + " kappa " + kappa.to_string());
      ++count;
    }
  }
  return c.done(std::to_string(count) + " isotopes of the orders 16 and 32 loops are isomorphic to the loop");
}

Outcome ac11() {
  Checker c;
  std::size_t loops = 0;
  for (const auto& entry : corpus::entries()) {
    const LoopTable t = to_table(build(entry.cvs));
    if (t.order() > 256) continue;
    if (nilpotency_class(t).value_or(99) > 2) {
      c.expect(false, entry.name + " is not of class 2");
      continue;
    }
    const auto r = class2_associator_identities(t);
    for (const auto& chk : r.checks) c.expect(chk.passed, entry.name + ": " + chk.name);
    ++loops;
  }
  return c.done("assocskew, assocpowerlin, commmultilin, fivecycle, exchange hold on " + std::to_string(loops) +
                " loops");
}

Outcome ac12() {
  Checker c;
  for (int s = 0; s < 50; ++s) {
    std::mt19937 rng(static_cast<unsigned>(s));
    const std::vector<int> orders = s < 25 ? std::vector<int>{4, 2} : std::vector<int>{8, 2};
    CodedModuleData d(2, orders, 2);
    d.z_values = {static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)};
    d.chi_at(0, 1) = static_cast<int>(rng() % 2);
    const CodedModule m(d);
    ValidationOptions vo;
    vo.tuple_limit = std::uint64_t{1} << 20;
    const auto r = validate_module(m, vo);
    c.expect(r.passed() && r.exhaustive(), "module axioms, seed " + std::to_string(s));
    const CodedLoop loop = build_module_extension(m);
    for (std::size_t i = 0; i < 2; ++i) {
      c.expect(loop.pow(loop.generator(i), orders[i]) == loop.central(m.z_values()[i]),
               "c_i^q_i != z_i, seed " + std::to_string(s));
    }
    ExtensionCheckOptions eo;
    eo.tuple_limit = std::uint64_t{1} << 20;
    c.expect(verify_module_extension(loop, m, eo).passed(), "extension checks, seed " + std::to_string(s));
  }
  return c.done("50 modules over Z4xZ2 and Z8xZ2: axioms exhaustive, c_i^q_i = z_i");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"AC1", "octonion reconstruction", 1, ac1},
      {"AC2", "length-67 construction", 1, ac2},
      {"AC3", "round trip at scale", 10, ac3},
      {"AC4", "Parker loop", 60, ac4},
      {"AC5", "classification dim 3 over F_3", 30, ac5},
      {"AC6", "classification dim 4 over F_3", 600, ac6},
      {"AC7", "exponent of L* divides 6", 0, ac7},
      {"AC8", "M_k-laws", 0, ac8},
      {"AC9", "isotopy identification", 0, ac9},
      {"AC10", "G-loop check", 0, ac10},
      {"AC11", "class-2 identity battery", 0, ac11},
      {"AC12", "coded-module consistency", 0, ac12},
  };
  std::set<std::string> selected(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& cr : criteria) {
    if (!selected.empty() && !selected.count(cr.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && cr.limit_seconds > 0 && secs >= cr.limit_seconds) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(cr.limit_seconds)) + " s limit)";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << cr.id << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << cr.title << "  [" << timing << "]  "
              << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
