#pragma once

// Finite loops given by their Cayley tables.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace codedloops {

class LoopTable {
 public:
  /// Largest supported order.
  static constexpr std::size_t kMaxOrder = std::size_t{1} << 13;

  /// Validates the loop axioms (Latin square, two-sided identity, two-sided
  /// inverses) and throws InvalidArgument with a description on failure.
  LoopTable(std::size_t n, std::vector<std::uint16_t> table);

  /// Takes the table as is. Only mul() and the Moufang and associativity
  /// scans are meaningful on a table that is not a loop.
  static LoopTable unchecked(std::size_t n, std::vector<std::uint16_t> table);

  /// Describes the first violated loop axiom, if any.
  static std::optional<std::string> loop_axiom_failure(std::size_t n, const std::vector<std::uint16_t>& table);

  std::size_t order() const noexcept { return n_; }
  std::size_t identity() const noexcept { return identity_; }
  bool is_loop() const noexcept { return is_loop_; }

  std::size_t mul(std::size_t a, std::size_t b) const noexcept { return table_[a * n_ + b]; }
  /// The x with a x = b.
  std::size_t ldiv(std::size_t a, std::size_t b) const noexcept { return ldiv_[a * n_ + b]; }
  /// The x with x b = a.
  std::size_t rdiv(std::size_t a, std::size_t b) const noexcept { return rdiv_[b * n_ + a]; }
  std::size_t inv(std::size_t a) const noexcept { return inv_[a]; }

  const std::vector<std::uint16_t>& table() const noexcept { return table_; }

  /// Optional labels carried through the CSV header (0 when unknown).
  int prime() const noexcept { return p_; }
  std::size_t rank() const noexcept { return k_; }
  void set_labels(int p, std::size_t k) noexcept {
    p_ = p;
    k_ = k;
  }

  bool operator==(const LoopTable& o) const noexcept { return n_ == o.n_ && table_ == o.table_; }

 private:
  LoopTable() = default;
  void build_divisions();

  std::size_t n_ = 0;
  std::size_t identity_ = 0;
  bool is_loop_ = false;
  int p_ = 0;
  std::size_t k_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> ldiv_;
  std::vector<std::uint16_t> rdiv_;
  std::vector<std::uint16_t> inv_;
};

/// Cayley table CSV: header `n=<order>,p=<p>,k=<k>` (p and k optional on
/// input), then n rows of n comma-separated 0-based indices.
/// With `validate` false, tables violating the loop axioms are accepted
/// through LoopTable::unchecked.
LoopTable parse_table_csv(std::string_view text, bool validate = true);
std::string emit_table_csv(const LoopTable& table);

/// The cyclic group Z/n.
LoopTable cyclic_group(std::size_t n);
/// Direct product, element (a, b) at index a * |B| + b.
LoopTable direct_product(const LoopTable& a, const LoopTable& b);
/// The dihedral group of order 2n, rotations r^i at i and reflections s r^i at n + i.
LoopTable dihedral_group(std::size_t n);

}  // namespace codedloops
