#pragma once

// Exhaustive-or-sampled driver for element identities of a CodedLoop.

#include <array>
#include <random>
#include <string>

#include "codedloops/coded_loop.hpp"

namespace codedloops::detail {

/// Exhaustive tuples carry z = 0; sampled tuples are arbitrary elements.
template <class Pred>
ExtensionCheck run_check(const std::string& name, const CodedLoop& loop, int arity,
                         const ExtensionCheckOptions& opt, Pred holds) {
  ExtensionCheck check;
  check.name = name;
  const std::uint64_t q = loop.quotient_order();
  auto total = checked_pow(q, static_cast<unsigned>(arity), opt.tuple_limit);
  check.exhaustive = total.has_value();
  std::array<LoopElement, 3> tuple;
  auto test = [&]() {
    ++check.tuples;
    if (holds(tuple)) return true;
    check.passed = false;
    check.witness.assign(tuple.begin(), tuple.begin() + arity);
    return false;
  };
  if (check.exhaustive) {
    for (std::uint64_t idx = 0; idx < *total; ++idx) {
      std::uint64_t r = idx;
      for (int i = arity; i-- > 0;) {
        tuple[i] = {0, FpVector::from_rank(r % q, loop.moduli())};
        r /= q;
      }
      if (!test()) break;
    }
  } else {
    std::seed_seq seq{opt.seed, static_cast<std::uint64_t>(arity), std::uint64_t{0x636f646564}};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::uint64_t> pick(0, loop.order() - 1);
    for (std::uint64_t s = 0; s < opt.tuple_limit; ++s) {
      for (int i = 0; i < arity; ++i) tuple[i] = loop.element_at(pick(rng));
      if (!test()) break;
    }
  }
  return check;
}

}  // namespace codedloops::detail
