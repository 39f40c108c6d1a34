#pragma once

// Coded extensions: the class-2 Moufang loop L with central Z = <z> and
// L/Z = C realizing a CVS. Elements are pairs (z, v). The multiplication is
// the semidirect central product recursion that splits off the last basis
// vector, so the stored pair (a, v) denotes z^a ((x_1^v1 x_2^v2) ...) x_k^vk.
// normal_form() converts to the right-nested form z^b x_1^v1 (x_2^v2 (...)).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "codedloops/cvs.hpp"
#include "codedloops/loop_table.hpp"

namespace codedloops {

struct LoopElement {
  int z = 0;
  FpVector v;

  bool operator==(const LoopElement&) const = default;
  std::string to_string() const;
};

using CodedLoopElement = LoopElement;

/// Basis data for the slotwise cocycle. Slot i has order orders[i] and
/// x_i^orders[i] = z^powers[i]; chi and alpha are full tables (k*k and k^3)
/// with values mod zmod.
struct ExtensionSpec {
  int zmod = 2;
  std::vector<int> orders;
  std::vector<int> powers;
  std::vector<int> chi;
  std::vector<int> alpha;
  /// Adds the quadratic alpha correction to chi(x_m, w) (the p = 2 family).
  bool quadratic_chi = false;
};

/// The slotwise data of a CVS: orders p, powers sigma_i.
ExtensionSpec extension_spec(const Cvs& cvs);

struct BuildOptions {
  /// Run validate_axioms on the CVS first.
  bool validate = true;
  ValidationOptions validation;
  /// Memoize the cocycle when |C| is at most this many elements.
  std::uint64_t theta_cache_elements = 1024;
};

namespace detail {
class Cocycle;
struct ThetaCache;
}  // namespace detail

class CodedLoop {
 public:
  /// The coded extension of `cvs`. Throws InvalidArgument if validation is
  /// requested and fails.
  static CodedLoop build(const Cvs& cvs, const BuildOptions& options = {});

  /// A loop driven directly by `spec`, without any consistency check.
  /// `cvs`, when given, is the CVS the loop claims to extend.
  static CodedLoop from_spec(ExtensionSpec spec, std::optional<Cvs> cvs = std::nullopt,
                             const BuildOptions& options = {});

  bool has_cvs() const noexcept { return cvs_.has_value(); }
  /// The CVS this loop was built from; throws if there is none.
  const Cvs& cvs() const;

  int zmod() const noexcept { return zmod_; }
  std::size_t dim() const noexcept { return moduli_.size(); }
  const std::vector<int>& moduli() const noexcept { return moduli_; }
  /// |C| and |L| = zmod * |C|.
  std::uint64_t quotient_order() const noexcept { return quotient_order_; }
  std::uint64_t order() const noexcept { return quotient_order_ * static_cast<std::uint64_t>(zmod_); }
  /// Twist vector of a kappa-isotope; empty for an untwisted loop.
  const std::vector<int>& kappa() const noexcept { return kappa_; }

  LoopElement identity() const;
  /// x_i (0-based).
  LoopElement generator(std::size_t i) const;
  LoopElement central(std::int64_t a) const;
  LoopElement element(std::int64_t z, const FpVector& v) const;

  LoopElement mul(const LoopElement& a, const LoopElement& b) const;
  /// Two-sided inverse, in closed form (-z - theta(v, -v), -v).
  LoopElement inv(const LoopElement& a) const;
  /// a^n with a^(n+1) = a a^n; negative n uses inv(a).
  LoopElement pow(const LoopElement& a, std::int64_t n) const;
  /// (ba)^-1 (ab)
  LoopElement commutator(const LoopElement& a, const LoopElement& b) const;
  /// (a(bc))^-1 ((ab)c)
  LoopElement associator(const LoopElement& a, const LoopElement& b, const LoopElement& c) const;
  std::uint64_t element_order(const LoopElement& a) const;

  /// z-part of (0, u)(0, w), twist included; u, w are reduced coordinates.
  int theta(std::span<const int> u, std::span<const int> w) const;
  /// Trilinear alpha from the basis tables, mod zmod.
  int alpha(std::span<const int> c, std::span<const int> d, std::span<const int> e) const;

  /// Table index z * |C| + rank(v).
  std::uint64_t index_of(const LoopElement& a) const;
  LoopElement element_at(std::uint64_t index) const;

 private:
  friend CodedLoop kappa_isotope(const CodedLoop& loop, const FpVector& k);
  friend CodedLoop semidirect_central_product(const CodedLoop&, const CodedLoop&, const Cvs&,
                                              const std::vector<FpVector>&, const std::vector<FpVector>&);

  CodedLoop() = default;
  void require(const LoopElement& a) const;
  int theta_uncached(std::span<const int> u, std::span<const int> w) const;
  void enable_cache(std::uint64_t limit);

  int zmod_ = 2;
  std::vector<int> moduli_;
  std::uint64_t quotient_order_ = 1;
  std::vector<int> alpha_;
  std::vector<int> kappa_;
  std::optional<Cvs> cvs_;
  std::shared_ptr<const detail::Cocycle> cocycle_;
  std::shared_ptr<detail::ThetaCache> cache_;
};

inline CodedLoop build(const Cvs& cvs, const BuildOptions& options = {}) { return CodedLoop::build(cvs, options); }

/// The kappa-isotope a o b = ab + alpha(a, k, b) on the same carrier.
CodedLoop kappa_isotope(const CodedLoop& loop, const FpVector& k);

/// Glues coded extensions of the sub-CVSs spanned by `embed_d` and `embed_e`
/// inside `ambient`. The result extends the CVS with basis embed_d then
/// embed_e; elements are (z, delta, epsilon) with the D coordinates first.
/// Throws InvalidArgument if the embeddings are dependent or the restricted
/// forms differ from those of d.cvs() and e.cvs().
CodedLoop semidirect_central_product(const CodedLoop& d, const CodedLoop& e, const Cvs& ambient,
                                     const std::vector<FpVector>& embed_d, const std::vector<FpVector>& embed_e);

/// Cayley table with element index z * |C| + rank(v). Throws BudgetExceeded
/// above max_order.
LoopTable to_table(const CodedLoop& loop, std::size_t max_order = LoopTable::kMaxOrder);

// ---------------------------------------------------------------------------
// Error term of the semidirect central product, with d_i in D and e_i in E
// given as vectors of the ambient CVS.

/// chi(e1, d2) + alpha(d1, e1 - d2, e2) + 2 alpha(d1, e1, d2) - 2 alpha(e1, d2, e2)
int sdcp_error(const Cvs& cvs, const FpVector& d1, const FpVector& e1, const FpVector& d2, const FpVector& e2);
/// chi(e1, d2) + alpha(d1, e1 + d2, e2)
int sdcp_error_p2(const Cvs& cvs, const FpVector& d1, const FpVector& e1, const FpVector& d2, const FpVector& e2);
/// chi(e1, d2) + alpha(d1, e1 - d2, e2) - alpha(d1, e1, d2) + alpha(e1, d2, e2)
int sdcp_error_p3(const Cvs& cvs, const FpVector& d1, const FpVector& e1, const FpVector& d2, const FpVector& e2);
/// chi(e1, d2)
int sdcp_error_large_p(const Cvs& cvs, const FpVector& d1, const FpVector& e1, const FpVector& d2,
                       const FpVector& e2);

// ---------------------------------------------------------------------------
// Verification

struct ExtensionCheckOptions {
  /// A check over r elements runs exhaustively when |C|^r <= tuple_limit,
  /// otherwise on tuple_limit seeded random tuples.
  std::uint64_t tuple_limit = std::uint64_t{1} << 18;
  std::uint64_t seed = 0;
};

struct ExtensionCheck {
  std::string name;
  std::uint64_t tuples = 0;
  bool exhaustive = true;
  bool passed = true;
  std::vector<LoopElement> witness;
};

struct ExtensionReport {
  std::vector<ExtensionCheck> checks;
  bool passed() const noexcept;
  bool exhaustive() const noexcept;
  const ExtensionCheck* first_failure() const noexcept;
};

/// Checks a^p = sigma(v), [a, b] = chi(v_a, v_b) and [a, b, c] = alpha(v_a, v_b, v_c)
/// against `cvs` (power, commute, associate).
ExtensionReport verify_coded_extension(const CodedLoop& loop, const Cvs& cvs, const ExtensionCheckOptions& options = {});
/// Same, against loop.cvs().
ExtensionReport verify_coded_extension(const CodedLoop& loop, const ExtensionCheckOptions& options = {});

struct MoufangSample {
  std::uint64_t triples = 0;
  bool passed = true;
  std::string identity;
  std::vector<LoopElement> witness;
};

/// The four Moufang identities on `triples` seeded random triples.
MoufangSample moufang_sampled(const CodedLoop& loop, std::uint64_t triples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Normal form

struct NormalForm {
  /// Exponent of z in front of the right-nested product.
  int z = 0;
  std::vector<int> exponents;
  bool operator==(const NormalForm&) const = default;
};

NormalForm normal_form(const CodedLoop& loop, const LoopElement& a);
LoopElement from_normal_form(const CodedLoop& loop, const NormalForm& nf);

}  // namespace codedloops
