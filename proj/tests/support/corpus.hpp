#pragma once

// Small CVSs shared by the unit and acceptance tests. Every entry has a coded
// extension of order at most 256.

#include <string>
#include <tuple>
#include <vector>

#include "codedloops/cvs.hpp"

namespace corpus {

struct Entry {
  std::string name;
  codedloops::Cvs cvs;
};

inline codedloops::Cvs make(int p, std::size_t k, std::vector<int> sigma,
                            std::vector<std::tuple<std::size_t, std::size_t, int>> chi,
                            std::vector<std::tuple<std::size_t, std::size_t, std::size_t, int>> alpha) {
  codedloops::CvsData d(p, k);
  d.sigma = std::move(sigma);
  for (auto [i, j, v] : chi) d.chi_at(i, j) = v;
  for (auto [i, j, l, v] : alpha) d.alpha_at(i, j, l) = v;
  return codedloops::Cvs(std::move(d));
}

/// The 81-element commutative loop of exponent 3: sigma = chi = 0, alpha_123 = 1.
inline codedloops::Cvs cml81() { return make(3, 3, {0, 0, 0}, {}, {{0, 1, 2, 1}}); }

/// A nonassociative SFM 2-loop of order 32.
inline codedloops::Cvs sfm32() {
  return make(2, 4, {1, 0, 1, 0}, {{0, 1, 1}, {1, 3, 1}, {2, 3, 1}}, {{0, 1, 2, 1}, {1, 2, 3, 1}});
}

inline std::vector<Entry> entries() {
  std::vector<Entry> out;
  out.push_back({"octonion", codedloops::octonion_cvs()});
  out.push_back({"cml81", cml81()});
  out.push_back({"sfm32", sfm32()});
  for (std::size_t k = 1; k <= 5; ++k) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      out.push_back({"p2_k" + std::to_string(k) + "_s" + std::to_string(seed), codedloops::random_cvs(2, k, seed)});
    }
  }
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      out.push_back({"p3_k" + std::to_string(k) + "_s" + std::to_string(seed), codedloops::random_cvs(3, k, seed)});
    }
  }
  out.push_back({"p3_k4_s1", codedloops::random_cvs(3, 4, 1)});
  out.push_back({"p5_k2_s1", codedloops::random_cvs(5, 2, 1)});
  return out;
}

}  // namespace corpus
