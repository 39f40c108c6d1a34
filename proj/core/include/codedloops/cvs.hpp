#pragma once

// Coded vector spaces: a vector space C over F_p together with a power map
// sigma: C -> Z, a commutator form chi: C x C -> Z and an associator form
// alpha: C x C x C -> Z, all valued in the cyclic group Z of order p (stored
// additively). The forms are determined by their values on a basis.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codedloops/algebra.hpp"

namespace codedloops {

/// Raw basis data of a CVS, 0-based. Only chi(i, j) with i < j and
/// alpha(i, j, l) with i < j < l are significant; the remaining entries are
/// ignored and regenerated from skew-symmetry.
struct CvsData {
  int p = 2;
  std::size_t k = 0;
  std::vector<int> sigma;  // size k
  std::vector<int> chi;    // k*k, row-major
  std::vector<int> alpha;  // k*k*k

  CvsData() = default;
  CvsData(int p, std::size_t k);

  int& sigma_at(std::size_t i) { return sigma.at(i); }
  int& chi_at(std::size_t i, std::size_t j) { return chi.at(i * k + j); }
  int& alpha_at(std::size_t i, std::size_t j, std::size_t l) { return alpha.at((i * k + j) * k + l); }
  int chi_at(std::size_t i, std::size_t j) const { return chi.at(i * k + j); }
  int alpha_at(std::size_t i, std::size_t j, std::size_t l) const { return alpha.at((i * k + j) * k + l); }
};

class Cvs {
 public:
  /// Validates and takes ownership of the basis data. Throws InvalidArgument
  /// if p is not prime, a value is out of range, or alpha is nonzero for p > 3.
  explicit Cvs(CvsData data);

  int p() const noexcept { return p_; }
  std::size_t dim() const noexcept { return k_; }

  int sigma_basis(std::size_t i) const { return sigma_.at(i); }
  /// chi(e_i, e_j) for any i, j.
  int chi_basis(std::size_t i, std::size_t j) const { return chi_[i * k_ + j]; }
  /// alpha(e_i, e_j, e_l) for any i, j, l (alternating extension).
  int alpha_basis(std::size_t i, std::size_t j, std::size_t l) const { return alpha_[(i * k_ + j) * k_ + l]; }

  /// The basis data in canonical form (only upper-triangular entries set).
  CvsData data() const;

  int eval_sigma(const FpVector& c) const;
  int eval_chi(const FpVector& c, const FpVector& d) const;
  int eval_alpha(const FpVector& c, const FpVector& d, const FpVector& e) const;

  // Unchecked variants on raw coordinate spans of length dim(), entries in [0, p).
  int sigma_raw(std::span<const int> c) const noexcept;
  int chi_raw(std::span<const int> c, std::span<const int> d) const noexcept;
  int alpha_raw(std::span<const int> c, std::span<const int> d, std::span<const int> e) const noexcept;

  bool has_trivial_alpha() const noexcept;

  FpVector zero() const { return FpVector::zero(k_, p_); }
  FpVector basis_vector(std::size_t i) const { return FpVector::basis(k_, p_, i); }

  bool operator==(const Cvs& o) const noexcept {
    return p_ == o.p_ && k_ == o.k_ && sigma_ == o.sigma_ && chi_ == o.chi_ && alpha_ == o.alpha_;
  }

 private:
  void require_vector(const FpVector& v) const;

  int p_;
  std::size_t k_;
  std::vector<int> sigma_;
  std::vector<int> chi_;    // full k x k table, skew-extended (symmetric for p = 2)
  std::vector<int> alpha_;  // full k^3 alternating tensor
};

/// chi evaluated by repeated polarization chi(c + x, d) = chi(c, d) + chi(x, d) + 3 alpha(c, x, d)
/// down to basis values. Independent of the closed form used by Cvs::eval_chi.
int chi_by_polarization(const Cvs& cvs, const FpVector& c, const FpVector& d);
/// sigma evaluated by repeated polarization sigma(c + x) = sigma(c) + sigma(x) [+ chi(c, x) for p = 2].
int sigma_by_polarization(const Cvs& cvs, const FpVector& c);

/// The CVS whose i-th basis vector is vectors[i] of `cvs` (values read off by
/// evaluation). With a basis this is an isomorphic copy; with fewer vectors it
/// is the restriction to their span.
Cvs restrict_to(const Cvs& cvs, const std::vector<FpVector>& vectors);

/// Every basis value multiplied by `scalar` (the action of Aut(Z)).
Cvs scale_cvs(const Cvs& cvs, int scalar);

// ---------------------------------------------------------------------------
// Axiom validation

/// Forms under test, given as callables so that corrupted or externally
/// derived forms (e.g. from code weights) can be checked.
struct FormOracle {
  int p = 2;
  std::size_t k = 0;
  std::function<int(const FpVector&)> sigma;
  std::function<int(const FpVector&, const FpVector&)> chi;
  std::function<int(const FpVector&, const FpVector&, const FpVector&)> alpha;
};

FormOracle oracle_of(const Cvs& cvs);

struct ValidationOptions {
  /// An identity quantifying over r vectors is checked exhaustively when
  /// (p^k)^r <= tuple_limit, and on tuple_limit seeded random tuples otherwise.
  std::uint64_t tuple_limit = std::uint64_t{1} << 15;
  std::uint64_t seed = 0;
};

struct IdentityCheck {
  std::string name;
  std::uint64_t tuples = 0;
  bool exhaustive = true;
  bool passed = true;
  /// On failure: the offending vectors, followed by the integer n when the
  /// identity quantifies over one.
  std::vector<FpVector> witness;
  std::optional<int> witness_n;
};

struct AxiomReport {
  std::vector<IdentityCheck> checks;

  bool passed() const noexcept;
  bool exhaustive() const noexcept;
  /// First failing identity, if any.
  const IdentityCheck* first_failure() const noexcept;
};

AxiomReport validate_forms(const FormOracle& forms, const ValidationOptions& options = {});
AxiomReport validate_axioms(const Cvs& cvs, const ValidationOptions& options = {});

// ---------------------------------------------------------------------------
// Radicals, adjoint translates, isomorphism

struct RadicalOptions {
  /// Largest admissible |C| for the exhaustive scans.
  std::uint64_t max_elements = 729;
};

/// Basis (reduced echelon form) of {c : chi(c, d) = 0 for all d}, found by exhaustive evaluation.
std::vector<FpVector> rad_chi(const Cvs& cvs, RadicalOptions options = {});
/// Basis of {c : alpha(c, d, e) = 0 for all d, e}, found by exhaustive evaluation.
std::vector<FpVector> rad_alpha(const Cvs& cvs, RadicalOptions options = {});

/// adt_k(C): chi(c, d) is replaced by chi(c, d) + alpha(c, k, d); sigma and alpha
/// basis values are kept.
Cvs adjoint_translate(const Cvs& cvs, const FpVector& k);

struct CvsIso {
  /// Column i is the image of basis vector i.
  FpMatrix matrix;
  /// Element of F_p^x; the forms of the target equal scalar times the source forms.
  int scalar;
};

struct IsoSearchOptions {
  std::uint64_t max_matrices = std::uint64_t{1} << 26;
};

/// Searches for (M, a) with sigma_B(Mc) = a sigma_A(c), chi_B(Mc, Md) = a chi_A(c, d)
/// and alpha_B(Mc, Md, Me) = a alpha_A(c, d, e). Scalars are tried in increasing
/// order; for each scalar the lexicographically least sequence of basis images
/// (column-major order of M) is reported.
std::optional<CvsIso> iso_up_to_scalar(const Cvs& a, const Cvs& b, IsoSearchOptions options = {});

/// Deterministic pseudo-random legal basis data (alpha = 0 when p > 3).
Cvs random_cvs(int p, std::size_t k, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Text format

/// Parses the line-oriented `cvs` format (1-based indices, '#' comments).
Cvs parse_cvs(std::string_view text);
/// Canonical serialization: header, then nonzero sigma, chi, alpha entries in
/// lexicographic index order.
std::string emit_cvs(const Cvs& cvs);

/// The CVS of the octonion loop: p = 2, k = 3 and every sigma, chi, alpha basis value 1.
Cvs octonion_cvs();

}  // namespace codedloops
