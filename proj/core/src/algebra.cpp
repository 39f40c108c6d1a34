#include "codedloops/algebra.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "codedloops/error.hpp"

namespace codedloops {

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t inverse_mod_prime(std::int64_t a, std::int64_t p) {
  a = mod_floor(a, p);
  if (a == 0) throw InvalidArgument("zero has no inverse mod " + std::to_string(p));
  // Fermat: a^(p-2).
  std::int64_t result = 1;
  std::int64_t base = a;
  for (std::int64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit) noexcept {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && out > limit / base) return std::nullopt;
    out *= base;
  }
  if (out > limit) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Residue

Residue::Residue(std::int64_t value, std::int64_t modulus) : value_(0), modulus_(modulus) {
  if (modulus <= 0) throw InvalidArgument("residue modulus must be positive");
  value_ = mod_floor(value, modulus);
}

void Residue::require_same(const Residue& o) const {
  if (modulus_ != o.modulus_) {
    throw InvalidArgument("residue modulus mismatch: " + std::to_string(modulus_) + " vs " +
                          std::to_string(o.modulus_));
  }
}

Residue Residue::operator+(const Residue& o) const {
  require_same(o);
  return Residue(value_ + o.value_, modulus_);
}

Residue Residue::operator-(const Residue& o) const {
  require_same(o);
  return Residue(value_ - o.value_, modulus_);
}

Residue Residue::operator*(const Residue& o) const {
  require_same(o);
  return Residue(value_ * o.value_, modulus_);
}

std::ostream& operator<<(std::ostream& os, const Residue& r) {
  return os << r.value() << " (mod " << r.modulus() << ")";
}

// ---------------------------------------------------------------------------
// FpVector

FpVector::FpVector(std::vector<int> coords, std::vector<int> moduli)
    : coords_(std::move(coords)), moduli_(std::move(moduli)) {
  if (coords_.size() != moduli_.size()) {
    throw InvalidArgument("vector has " + std::to_string(coords_.size()) + " coordinates but " +
                          std::to_string(moduli_.size()) + " moduli");
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (moduli_[i] <= 0) throw InvalidArgument("slot modulus must be positive");
    coords_[i] = static_cast<int>(mod_floor(coords_[i], moduli_[i]));
  }
}

FpVector FpVector::zero(std::size_t k, int p) { return FpVector(std::vector<int>(k, 0), std::vector<int>(k, p)); }

FpVector FpVector::zero(std::vector<int> moduli) {
  std::vector<int> coords(moduli.size(), 0);
  return FpVector(std::move(coords), std::move(moduli));
}

FpVector FpVector::uniform(std::vector<int> coords, int p) {
  std::vector<int> moduli(coords.size(), p);
  return FpVector(std::move(coords), std::move(moduli));
}

FpVector FpVector::basis(std::size_t k, int p, std::size_t i) { return basis(std::vector<int>(k, p), i); }

FpVector FpVector::basis(std::vector<int> moduli, std::size_t i) {
  if (i >= moduli.size()) throw InvalidArgument("basis index out of range");
  std::vector<int> coords(moduli.size(), 0);
  coords[i] = 1;
  return FpVector(std::move(coords), std::move(moduli));
}

FpVector FpVector::from_rank(std::uint64_t rank, std::vector<int> moduli) {
  std::vector<int> coords(moduli.size(), 0);
  for (std::size_t i = moduli.size(); i-- > 0;) {
    coords[i] = static_cast<int>(rank % static_cast<std::uint64_t>(moduli[i]));
    rank /= static_cast<std::uint64_t>(moduli[i]);
  }
  if (rank != 0) throw InvalidArgument("rank exceeds group order");
  return FpVector(std::move(coords), std::move(moduli));
}

bool FpVector::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](int c) { return c == 0; });
}

std::uint64_t FpVector::rank() const noexcept {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    r = r * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(coords_[i]);
  }
  return r;
}

void FpVector::require_compatible(const FpVector& o) const {
  if (moduli_ != o.moduli_) {
    throw InvalidArgument("vector dimension/modulus mismatch: " + to_string() + " vs " + o.to_string());
  }
}

FpVector FpVector::operator+(const FpVector& o) const {
  require_compatible(o);
  std::vector<int> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (coords_[i] + o.coords_[i]) % moduli_[i];
  return FpVector(std::move(out), moduli_);
}

FpVector FpVector::operator-(const FpVector& o) const {
  require_compatible(o);
  std::vector<int> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coords_[i] - o.coords_[i];
  return FpVector(std::move(out), moduli_);
}

FpVector FpVector::operator-() const {
  std::vector<int> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -coords_[i];
  return FpVector(std::move(out), moduli_);
}

FpVector FpVector::scaled(std::int64_t n) const {
  std::vector<int> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<int>(mod_floor(static_cast<std::int64_t>(coords_[i]) * mod_floor(n, moduli_[i]), moduli_[i]));
  }
  return FpVector(std::move(out), moduli_);
}

std::strong_ordering FpVector::operator<=>(const FpVector& o) const {
  if (auto c = moduli_ <=> o.moduli_; c != 0) return c;
  return coords_ <=> o.coords_;
}

std::string FpVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FpVector& v) { return os << v.to_string(); }

FpVector vec_add(const FpVector& a, const FpVector& b) { return a + b; }

std::uint64_t group_order(std::span<const int> moduli) {
  std::uint64_t n = 1;
  for (int m : moduli) n *= static_cast<std::uint64_t>(m);
  return n;
}

std::vector<FpVector> all_vectors(const std::vector<int>& moduli) {
  const std::uint64_t n = group_order(moduli);
  std::vector<FpVector> out;
  out.reserve(n);
  for (std::uint64_t r = 0; r < n; ++r) out.push_back(FpVector::from_rank(r, moduli));
  return out;
}

std::vector<FpVector> all_vectors(std::size_t k, int p) { return all_vectors(std::vector<int>(k, p)); }

// ---------------------------------------------------------------------------
// FpMatrix

FpMatrix::FpMatrix(std::size_t k, int p) : k_(k), p_(p), entries_(k * k, 0) {
  if (!is_prime(p)) throw InvalidArgument("matrix modulus must be prime");
}

FpMatrix::FpMatrix(std::size_t k, int p, std::vector<int> row_major) : k_(k), p_(p), entries_(std::move(row_major)) {
  if (!is_prime(p)) throw InvalidArgument("matrix modulus must be prime");
  if (entries_.size() != k * k) throw InvalidArgument("matrix entry count does not match k*k");
  for (int& e : entries_) e = static_cast<int>(mod_floor(e, p));
}

FpMatrix FpMatrix::identity(std::size_t k, int p) {
  FpMatrix m(k, p);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_columns(const std::vector<FpVector>& columns) {
  if (columns.empty()) throw InvalidArgument("from_columns needs at least one column");
  const std::size_t k = columns.size();
  const int p = columns.front().moduli().empty() ? 2 : columns.front().moduli().front();
  FpMatrix m(k, p);
  for (std::size_t c = 0; c < k; ++c) {
    if (columns[c].size() != k) throw InvalidArgument("from_columns: column length must equal column count");
    for (std::size_t r = 0; r < k; ++r) {
      if (columns[c].moduli()[r] != p) throw InvalidArgument("from_columns: non-uniform modulus");
      m.set(r, c, columns[c][r]);
    }
  }
  return m;
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t v) {
  entries_[r * k_ + c] = static_cast<int>(mod_floor(v, p_));
}

FpVector FpMatrix::column(std::size_t c) const {
  std::vector<int> out(k_);
  for (std::size_t r = 0; r < k_; ++r) out[r] = at(r, c);
  return FpVector::uniform(std::move(out), p_);
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  if (k_ != o.k_ || p_ != o.p_) throw InvalidArgument("matrix product: shape/modulus mismatch");
  FpMatrix out(k_, p_);
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < k_; ++c) {
      std::int64_t s = 0;
      for (std::size_t t = 0; t < k_; ++t) s += static_cast<std::int64_t>(at(r, t)) * o.at(t, c);
      out.set(r, c, s);
    }
  }
  return out;
}

namespace {

// In-place Gaussian elimination on a rows x cols array; returns the rank.
std::size_t eliminate(std::vector<std::int64_t>& a, std::size_t rows, std::size_t cols, std::int64_t p,
                      std::size_t pivot_cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < pivot_cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    }
    const std::int64_t inv = inverse_mod_prime(a[rank * cols + c], p);
    for (std::size_t j = 0; j < cols; ++j) a[rank * cols + j] = a[rank * cols + j] * inv % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r * cols + c] == 0) continue;
      const std::int64_t f = a[r * cols + c];
      for (std::size_t j = 0; j < cols; ++j) {
        a[r * cols + j] = mod_floor(a[r * cols + j] - f * a[rank * cols + j], p);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t FpMatrix::rank() const {
  std::vector<std::int64_t> a(entries_.begin(), entries_.end());
  return eliminate(a, k_, k_, p_, k_);
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  const std::size_t cols = 2 * k_;
  std::vector<std::int64_t> a(k_ * cols, 0);
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < k_; ++c) a[r * cols + c] = at(r, c);
    a[r * cols + k_ + r] = 1;
  }
  if (eliminate(a, k_, cols, p_, k_) != k_) return std::nullopt;
  FpMatrix out(k_, p_);
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t c = 0; c < k_; ++c) out.set(r, c, a[r * cols + k_ + c]);
  }
  return out;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < k_; ++r) {
    if (r) os << ';';
    for (std::size_t c = 0; c < k_; ++c) {
      if (c) os << ' ';
      os << at(r, c);
    }
  }
  os << ']';
  return os.str();
}

FpVector mat_apply(const FpMatrix& m, const FpVector& v) {
  if (v.size() != m.dim()) throw InvalidArgument("mat_apply: dimension mismatch");
  for (int mod : v.moduli()) {
    if (mod != m.prime()) throw InvalidArgument("mat_apply: vector modulus differs from matrix prime");
  }
  std::vector<int> out(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < m.dim(); ++c) s += static_cast<std::int64_t>(m.at(r, c)) * v[c];
    out[r] = static_cast<int>(mod_floor(s, m.prime()));
  }
  return FpVector::uniform(std::move(out), m.prime());
}

std::vector<FpVector> span_basis(const std::vector<FpVector>& vectors, int p) {
  if (vectors.empty()) return {};
  const std::size_t k = vectors.front().size();
  std::vector<std::int64_t> a(vectors.size() * k);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].size() != k) throw InvalidArgument("span_basis: dimension mismatch");
    for (std::size_t c = 0; c < k; ++c) a[r * k + c] = vectors[r][c];
  }
  const std::size_t rank = eliminate(a, vectors.size(), k, p, k);
  std::vector<FpVector> out;
  for (std::size_t r = 0; r < rank; ++r) {
    std::vector<int> row(k);
    for (std::size_t c = 0; c < k; ++c) row[c] = static_cast<int>(a[r * k + c]);
    out.push_back(FpVector::uniform(std::move(row), p));
  }
  return out;
}

std::size_t span_dimension(const std::vector<FpVector>& vectors, int p) { return span_basis(vectors, p).size(); }

bool in_span(const std::vector<FpVector>& basis, const FpVector& v, int p) {
  auto extended = basis;
  extended.push_back(v);
  return span_dimension(extended, p) == span_dimension(basis, p);
}

std::uint64_t gl_order(std::size_t k, int p) {
  const std::uint64_t pk = *checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k));
  std::uint64_t out = 1;
  std::uint64_t pi = 1;
  for (std::size_t i = 0; i < k; ++i) {
    out *= pk - pi;
    pi *= static_cast<std::uint64_t>(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// InvertibleMatrices

InvertibleMatrices::InvertibleMatrices(std::size_t k, int p, EnumerationLimits limits) : k_(k), p_(p), total_(0) {
  if (k == 0) throw InvalidArgument("enumerate_invertible: k must be positive");
  if (!is_prime(p)) throw InvalidArgument("enumerate_invertible: p must be prime");
  auto total = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k * k), limits.max_matrices);
  if (!total) {
    throw BudgetExceeded("enumerate_invertible: p^(k^2) exceeds the enumeration limit of " +
                         std::to_string(limits.max_matrices));
  }
  total_ = *total;
}

InvertibleMatrices::iterator::iterator(std::size_t k, int p, std::uint64_t total)
    : k_(k), p_(p), index_(0), total_(total), done_(false) {
  settle();
}

void InvertibleMatrices::iterator::settle() {
  while (index_ < total_) {
    std::vector<int> entries(k_ * k_);
    std::uint64_t r = index_;
    for (std::size_t i = entries.size(); i-- > 0;) {
      entries[i] = static_cast<int>(r % static_cast<std::uint64_t>(p_));
      r /= static_cast<std::uint64_t>(p_);
    }
    FpMatrix m(k_, p_, std::move(entries));
    if (m.is_invertible()) {
      current_ = std::move(m);
      return;
    }
    ++index_;
  }
  done_ = true;
  current_.reset();
}

InvertibleMatrices::iterator& InvertibleMatrices::iterator::operator++() {
  ++index_;
  settle();
  return *this;
}

}  // namespace codedloops
