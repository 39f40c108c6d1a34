#pragma once

// Isomorphism and isotopy classes of small CVSs by exhaustive enumeration.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "codedloops/cvs.hpp"

namespace codedloops {

struct ClassifyOptions {
  int p = 3;
  std::size_t dim = 3;
  /// p: sigma identically zero. p*p: sigma not identically zero. 0: no condition.
  int exponent = 0;
  /// Keep only CVSs with alpha != 0.
  bool nonassociative = false;
  /// Replace the alpha tables by one representative per alpha class before
  /// enumerating sigma and chi (odd p only; the alpha classes are computed).
  bool prune_alpha = false;
  /// Largest number of basis-data tables enumerated.
  std::uint64_t max_tables = std::uint64_t{1} << 20;
};

struct CvsClassInvariants {
  bool sigma_trivial = false;
  bool chi_trivial = false;
  std::size_t rad_chi_dim = 0;
  std::size_t rad_alpha_dim = 0;
  bool rad_alpha_in_rad_chi = false;

  bool operator==(const CvsClassInvariants&) const = default;
};

struct CvsClass {
  /// First enumerated member.
  Cvs representative;
  /// Enumerated tables isomorphic (up to scalar) to the representative.
  std::uint64_t members = 0;
  CvsClassInvariants invariants;
  /// Index of the isotopy class.
  std::size_t isotopy_class = 0;
};

struct ClassifyResult {
  std::uint64_t tables = 0;
  /// Number of alpha classes kept when pruning (0 otherwise).
  std::size_t alpha_classes = 0;
  std::vector<CvsClass> classes;
  std::size_t isotopy_classes = 0;
};

CvsClassInvariants class_invariants(const Cvs& cvs);

/// Enumerates basis data lexicographically (alpha tables outermost), buckets
/// by iso_up_to_scalar and, for p = 3, merges buckets related by an adjoint
/// translate. For other p every class is its own isotopy class.
ClassifyResult classify_cvs(const ClassifyOptions& options);

/// Representatives of the nonzero alternating trilinear forms on F_p^dim up to
/// GL(dim, p) and scalars, each as a CVS with sigma = chi = 0. Odd p only.
std::vector<Cvs> alpha_classes(int p, std::size_t dim);

}  // namespace codedloops
