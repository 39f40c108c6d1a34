#pragma once

// Binary linear codes, the CVS of a doubly even code, and the inverse
// construction of a doubly even code realizing a given CVS over F_2.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "codedloops/cvs.hpp"

namespace codedloops {

/// Packed bit vector of fixed length.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  /// From a string of '0' and '1'; throws InvalidArgument on other characters.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const noexcept { return n_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool v = true);
  std::size_t weight() const noexcept;
  bool is_zero() const noexcept;

  BitVector& operator^=(const BitVector& o);
  BitVector operator^(const BitVector& o) const;
  BitVector operator&(const BitVector& o) const;
  bool operator==(const BitVector&) const = default;

  /// Concatenation of this and `o`.
  BitVector concat(const BitVector& o) const;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::string to_string() const;

 private:
  void require_same(const BitVector& o) const;
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

std::size_t weight(const BitVector& c);
std::size_t intersect2(const BitVector& c, const BitVector& d);
std::size_t intersect3(const BitVector& c, const BitVector& d, const BitVector& e);

class BinaryCode {
 public:
  /// Throws InvalidArgument if rows differ in length or are linearly dependent.
  BinaryCode(std::size_t length, std::vector<BitVector> generators);

  std::size_t length() const noexcept { return n_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<BitVector>& generators() const noexcept { return rows_; }

  /// Sum of the generators selected by the bits of `mask` (bit i selects row i).
  BitVector codeword(std::uint64_t mask) const;
  /// Codeword with coordinates c over F_2 in the generator basis.
  BitVector codeword(const FpVector& c) const;

  /// Number of codewords of each weight 0..length, by enumeration (dim <= 24).
  std::vector<std::uint64_t> weight_distribution() const;
  /// Least nonzero weight, by enumeration (dim <= 24); 0 for the zero code.
  std::size_t minimum_weight() const;

 private:
  std::size_t n_;
  std::vector<BitVector> rows_;
};

/// Basis criterion: every generator weight is 0 mod 4 and every pairwise
/// intersection is even. For dim <= 16 the answer is cross-checked against
/// is_doubly_even_exhaustive and a mismatch throws.
bool is_doubly_even(const BinaryCode& code);
/// Every codeword weight is 0 mod 4, by enumeration (dim <= 24).
bool is_doubly_even_exhaustive(const BinaryCode& code);

/// sigma = wt/4, chi = wt(c & d)/2, alpha = wt(c & d & e), all mod 2, read off
/// the codewords of arbitrary coefficient vectors. Used as an independent
/// oracle for the forms of code_to_cvs.
FormOracle code_forms(const BinaryCode& code);

/// The CVS over F_2 of a doubly even code, in its generator basis.
/// Throws InvalidArgument if the code is not doubly even.
Cvs code_to_cvs(const BinaryCode& code);

/// A doubly even code whose CVS is exactly `cvs` (same basis order), built
/// block by block: per basis vector an 8-column (sigma = 0) or 4-column
/// (sigma = 1) block, then a 14-column block for every chi_im = 1 with i < m
/// and a 13-column block for every alpha_ijm = 1 with i < j < m.
BinaryCode cvs_to_code(const Cvs& cvs);
/// The length cvs_to_code produces.
std::size_t cvs_to_code_length(const Cvs& cvs);

/// The [7,3,4] simplex code with rows 1110100, 0111010, 0011101.
BinaryCode builtin_hamming734();
/// The extended binary Golay code [24,12,8]. Verifies dimension, minimum
/// weight, double evenness and the weight distribution before returning.
BinaryCode builtin_golay24();

/// Line format: `code`, then one 0/1 row per line; '#' comments.
BinaryCode parse_code(std::string_view text);
std::string emit_code(const BinaryCode& code);

}  // namespace codedloops
