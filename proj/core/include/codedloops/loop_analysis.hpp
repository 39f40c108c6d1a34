#pragma once

// Structure of finite loops given by Cayley tables: identities, centers and
// nuclei, derived subloops, central series, the Frattini subloop, torsion
// components and brute-force isomorphism.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "codedloops/loop_table.hpp"

namespace codedloops {

/// Sorted element indices of a subloop.
using Subloop = std::vector<std::size_t>;

struct IdentityResult {
  bool holds = true;
  std::string identity;
  std::vector<std::size_t> witness;
};

/// ((yx)z)x = y(x(zx)), ((xy)x)z = x(y(xz)), (x(yz))x = (xy)(zx) = x((yz)x), all triples.
IdentityResult check_moufang(const LoopTable& loop);
inline bool is_moufang(const LoopTable& loop) { return check_moufang(loop).holds; }

IdentityResult check_associative(const LoopTable& loop);
inline bool is_associative(const LoopTable& loop) { return check_associative(loop).holds; }
bool is_commutative(const LoopTable& loop);

/// x^k (y (x z)) = ((x^k y) x) z for all triples.
bool mk_law_holds(const LoopTable& loop, std::int64_t k);

// Element arithmetic. Powers follow x^(n+1) = x x^n.
std::size_t power(const LoopTable& loop, std::size_t x, std::int64_t n);
std::size_t element_order(const LoopTable& loop, std::size_t x);
/// Least common multiple of the element orders.
std::uint64_t exponent(const LoopTable& loop);
std::uint64_t exponent(const LoopTable& loop, const Subloop& s);
/// (yx)^-1 (xy)
std::size_t commutator(const LoopTable& loop, std::size_t x, std::size_t y);
/// (x(yz))^-1 ((xy)z)
std::size_t associator(const LoopTable& loop, std::size_t x, std::size_t y, std::size_t z);

// Subloops.
Subloop generated_subloop(const LoopTable& loop, const std::vector<std::size_t>& generators);
bool is_subloop(const LoopTable& loop, const Subloop& s);
Subloop intersect(const Subloop& a, const Subloop& b);

Subloop nucleus(const LoopTable& loop);
Subloop moufang_center(const LoopTable& loop);
/// Elements that commute and associate with everything.
Subloop center(const LoopTable& loop);

/// Invariance under the inner maps T_x = L_x^-1 R_x, L_{x,y} = L_{yx}^-1 L_y L_x
/// and R_{x,y} = R_{xy}^-1 R_y R_x.
bool is_normal(const LoopTable& loop, const Subloop& s);
/// Definitional check: xS = Sx, x(yS) = (xy)S and (Sx)y = S(xy) for all x, y.
bool is_normal_by_cosets(const LoopTable& loop, const Subloop& s);
/// Smallest normal subloop containing `elements`.
Subloop normal_closure(const LoopTable& loop, const std::vector<std::size_t>& elements);

struct DerivedSubloops {
  /// L': generated as a normal subloop by all commutators and associators.
  Subloop centrally_derived;
  /// L*: generated as a normal subloop by all associators.
  Subloop nuclearly_derived;
};
DerivedSubloops derived_subloops(const LoopTable& loop);

struct Quotient {
  LoopTable table;
  /// Coset index of every element; cosets are ordered by least representative.
  std::vector<std::size_t> coset_of;
};
/// L / S for a normal subloop S. Throws InvalidArgument if S is not normal.
Quotient quotient(const LoopTable& loop, const Subloop& s);

/// Z_0 = 1, Z_1 = Z(L), Z_(i+1) / Z_i = Z(L / Z_i), until the chain stops growing.
std::vector<Subloop> upper_central_series(const LoopTable& loop);
/// Least n with Z_n = L; nullopt if L is not centrally nilpotent.
std::optional<std::size_t> nilpotency_class(const LoopTable& loop);

struct FrattiniOptions {
  /// Largest order for the maximal-subloop computation.
  std::size_t oracle_limit = 128;
};

/// Intersection of all maximal subloops, from the full subloop lattice.
Subloop frattini_by_maximal_subloops(const LoopTable& loop, std::size_t limit = 128);
/// Subloop generated by commutators, associators and p-th powers.
Subloop frattini_by_generators(const LoopTable& loop, int p);
/// The maximal-subloop intersection up to options.oracle_limit; beyond it the
/// generator formula, which requires a p-loop. When both apply they must agree
/// and a disagreement throws Error.
Subloop frattini(const LoopTable& loop, const FrattiniOptions& options = {});

/// Set of prime p with |L| = p^n, or nullopt.
std::optional<int> loop_prime(const LoopTable& loop);

/// {x : the order of x is a power of p}.
Subloop torsion_component(const LoopTable& loop, int p);

struct TorsionReport {
  std::vector<int> primes;
  std::vector<Subloop> components;
  /// Every component is a subloop.
  bool subloops = true;
  /// Elements of different components commute and associate.
  bool independent = true;
  /// The product of the component orders is |L|.
  bool full = true;
};
TorsionReport torsion_components(const LoopTable& loop);

struct Class2Check {
  std::string name;
  bool passed = true;
  std::vector<std::size_t> witness;
};

struct Class2Report {
  std::vector<Class2Check> checks;
  bool passed() const noexcept;
};

/// Skew-symmetry and power-linearity of the associator, the commutator
/// expansion [xy, z] = [x,z][[x,z],y][y,z][x,y,z]^3, the pentagonal identity
/// and the exchange identity, checked on all tuples. Associators are read on
/// a transversal of the center. Requires central nilpotency class <= 2.
Class2Report class2_associator_identities(const LoopTable& loop);

struct IsoOptions {
  std::size_t max_order = 256;
};

/// An isomorphism L -> M as the image of every element of L, found by
/// backtracking over images of a greedy generating set. The reported map is
/// the one with the lexicographically least generator images.
std::optional<std::vector<std::size_t>> brute_force_isomorphic(const LoopTable& l, const LoopTable& m,
                                                                 const IsoOptions& options = {});

}  // namespace codedloops
