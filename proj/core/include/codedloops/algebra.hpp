#pragma once

// Residue arithmetic, exponent vectors over Z/q, and small matrices over F_p.
//
// Central values z^a of a cyclic group Z = <z> are stored additively as the
// residue a throughout the library.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace codedloops {

bool is_prime(std::int64_t n) noexcept;

/// Least nonnegative representative of x modulo m (m > 0).
constexpr std::int64_t mod_floor(std::int64_t x, std::int64_t m) noexcept {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

/// Inverse of a modulo prime p; a must be nonzero mod p.
std::int64_t inverse_mod_prime(std::int64_t a, std::int64_t p);

/// p^e with overflow checking against `limit`; returns nullopt past the limit.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp,
                                         std::uint64_t limit = UINT64_MAX) noexcept;

class Residue {
 public:
  Residue(std::int64_t value, std::int64_t modulus);

  std::int64_t value() const noexcept { return value_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const { return Residue(-value_, modulus_); }
  Residue scaled(std::int64_t n) const { return Residue(value_ * mod_floor(n, modulus_), modulus_); }

  bool operator==(const Residue&) const = default;

 private:
  void require_same(const Residue& o) const;
  std::int64_t value_;
  std::int64_t modulus_;
};

std::ostream& operator<<(std::ostream& os, const Residue& r);

/// A vector of residues, slot i reduced modulo moduli()[i]. In the
/// elementary abelian case every modulus equals the prime p.
class FpVector {
 public:
  FpVector() = default;
  FpVector(std::vector<int> coords, std::vector<int> moduli);

  static FpVector zero(std::size_t k, int p);
  static FpVector zero(std::vector<int> moduli);
  /// All slots reduced modulo p.
  static FpVector uniform(std::vector<int> coords, int p);
  /// The i-th standard basis vector (0-based).
  static FpVector basis(std::size_t k, int p, std::size_t i);
  static FpVector basis(std::vector<int> moduli, std::size_t i);
  /// Inverse of rank(): slot 0 is the most significant digit.
  static FpVector from_rank(std::uint64_t rank, std::vector<int> moduli);

  std::size_t size() const noexcept { return coords_.size(); }
  int operator[](std::size_t i) const { return coords_[i]; }
  Residue residue(std::size_t i) const { return Residue(coords_[i], moduli_[i]); }
  const std::vector<int>& coords() const noexcept { return coords_; }
  const std::vector<int>& moduli() const noexcept { return moduli_; }
  bool is_zero() const noexcept;

  /// Mixed-radix rank with slot 0 most significant, so that rank order is
  /// lexicographic order of coordinate sequences.
  std::uint64_t rank() const noexcept;

  FpVector operator+(const FpVector& o) const;
  FpVector operator-(const FpVector& o) const;
  FpVector operator-() const;
  FpVector scaled(std::int64_t n) const;

  bool operator==(const FpVector&) const = default;
  std::strong_ordering operator<=>(const FpVector& o) const;

  std::string to_string() const;

 private:
  void require_compatible(const FpVector& o) const;
  std::vector<int> coords_;
  std::vector<int> moduli_;
};

std::ostream& operator<<(std::ostream& os, const FpVector& v);

/// Slotwise sum; throws InvalidArgument on dimension or modulus mismatch.
FpVector vec_add(const FpVector& a, const FpVector& b);

/// Number of elements of the group with the given slot moduli.
std::uint64_t group_order(std::span<const int> moduli);

/// Every vector with the given moduli, in rank order.
std::vector<FpVector> all_vectors(const std::vector<int>& moduli);
std::vector<FpVector> all_vectors(std::size_t k, int p);

class FpMatrix {
 public:
  FpMatrix(std::size_t k, int p);
  FpMatrix(std::size_t k, int p, std::vector<int> row_major);

  static FpMatrix identity(std::size_t k, int p);
  /// Matrix whose columns are the given vectors.
  static FpMatrix from_columns(const std::vector<FpVector>& columns);

  std::size_t dim() const noexcept { return k_; }
  int prime() const noexcept { return p_; }
  int at(std::size_t r, std::size_t c) const { return entries_[r * k_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v);
  const std::vector<int>& entries() const noexcept { return entries_; }
  FpVector column(std::size_t c) const;

  FpMatrix operator*(const FpMatrix& o) const;
  bool operator==(const FpMatrix&) const = default;

  std::size_t rank() const;
  bool is_invertible() const { return rank() == k_; }
  std::optional<FpMatrix> inverse() const;

  std::string to_string() const;

 private:
  std::size_t k_;
  int p_;
  std::vector<int> entries_;
};

/// Matrix-vector product mod p.
FpVector mat_apply(const FpMatrix& m, const FpVector& v);

/// Reduced row echelon basis of the span of `vectors` over F_p.
std::vector<FpVector> span_basis(const std::vector<FpVector>& vectors, int p);

/// Dimension of the span of `vectors` over F_p.
std::size_t span_dimension(const std::vector<FpVector>& vectors, int p);

/// Whether v lies in the span of `basis` over F_p.
bool in_span(const std::vector<FpVector>& basis, const FpVector& v, int p);

/// |GL(k, p)| = prod_{i<k} (p^k - p^i).
std::uint64_t gl_order(std::size_t k, int p);

struct EnumerationLimits {
  /// Largest admissible p^(k*k); the default admits k <= 5 at p = 2 and k <= 4 at p = 3.
  std::uint64_t max_matrices = std::uint64_t{1} << 26;
};

/// Lazily enumerates every invertible k x k matrix over F_p exactly once, in
/// row-major lexicographic order (entry (0,0) most significant).
class InvertibleMatrices {
 public:
  InvertibleMatrices(std::size_t k, int p, EnumerationLimits limits = {});

  class iterator {
   public:
    using value_type = FpMatrix;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    const FpMatrix& operator*() const { return *current_; }
    const FpMatrix* operator->() const { return &*current_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& o) const { return done_ == o.done_ && (done_ || index_ == o.index_); }

   private:
    friend class InvertibleMatrices;
    iterator(std::size_t k, int p, std::uint64_t total);
    void settle();

    std::size_t k_ = 0;
    int p_ = 2;
    std::uint64_t index_ = 0;
    std::uint64_t total_ = 0;
    bool done_ = true;
    std::optional<FpMatrix> current_;
  };

  iterator begin() const { return iterator(k_, p_, total_); }
  iterator end() const { return iterator(); }

 private:
  std::size_t k_;
  int p_;
  std::uint64_t total_;
};

inline InvertibleMatrices enumerate_invertible(std::size_t k, int p, EnumerationLimits limits = {}) {
  return InvertibleMatrices(k, p, limits);
}

}  // namespace codedloops
