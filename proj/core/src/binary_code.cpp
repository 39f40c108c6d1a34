#include "codedloops/binary_code.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "codedloops/error.hpp"
#include "text_util.hpp"

namespace codedloops {

// ---------------------------------------------------------------------------
// BitVector

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw InvalidArgument("bit string contains '" + std::string(1, bits[i]) + "'");
    }
  }
  return v;
}

void BitVector::set(std::size_t i, bool v) {
  if (i >= n_) throw InvalidArgument("bit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (v) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

std::size_t BitVector::weight() const noexcept {
  std::size_t w = 0;
  for (auto x : words_) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

bool BitVector::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t x) { return x == 0; });
}

void BitVector::require_same(const BitVector& o) const {
  if (n_ != o.n_) {
    throw InvalidArgument("bit vectors of lengths " + std::to_string(n_) + " and " + std::to_string(o.n_));
  }
}

BitVector& BitVector::operator^=(const BitVector& o) {
  require_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

BitVector BitVector::operator^(const BitVector& o) const {
  BitVector r = *this;
  r ^= o;
  return r;
}

BitVector BitVector::operator&(const BitVector& o) const {
  require_same(o);
  BitVector r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
  return r;
}

BitVector BitVector::concat(const BitVector& o) const {
  BitVector r(n_ + o.n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (get(i)) r.set(i);
  }
  for (std::size_t i = 0; i < o.n_; ++i) {
    if (o.get(i)) r.set(n_ + i);
  }
  return r;
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::size_t weight(const BitVector& c) { return c.weight(); }

std::size_t intersect2(const BitVector& c, const BitVector& d) { return (c & d).weight(); }

std::size_t intersect3(const BitVector& c, const BitVector& d, const BitVector& e) {
  return (c & d & e).weight();
}

// ---------------------------------------------------------------------------
// BinaryCode

BinaryCode::BinaryCode(std::size_t length, std::vector<BitVector> generators)
    : n_(length), rows_(std::move(generators)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != n_) {
      throw InvalidArgument("generator " + std::to_string(i + 1) + " has length " +
                            std::to_string(rows_[i].size()) + ", expected " + std::to_string(n_));
    }
  }
  // Gaussian elimination keyed by leading bit.
  std::vector<BitVector> echelon;
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    BitVector v = rows_[r];
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      if (v.get(pivots[e])) v ^= echelon[e];
    }
    if (v.is_zero()) {
      throw InvalidArgument("generator " + std::to_string(r + 1) + " is linearly dependent on earlier rows");
    }
    std::size_t pivot = 0;
    while (!v.get(pivot)) ++pivot;
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      if (echelon[e].get(pivot)) echelon[e] ^= v;
    }
    echelon.push_back(std::move(v));
    pivots.push_back(pivot);
  }
}

BitVector BinaryCode::codeword(std::uint64_t mask) const {
  BitVector w(n_);
  for (std::size_t i = 0; i < rows_.size() && mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) w ^= rows_[i];
  }
  return w;
}

BitVector BinaryCode::codeword(const FpVector& c) const {
  if (c.size() != rows_.size()) throw InvalidArgument("coefficient vector does not match code dimension");
  BitVector w(n_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (c.moduli()[i] != 2) throw InvalidArgument("coefficient vector is not over F_2");
    if (c[i] != 0) w ^= rows_[i];
  }
  return w;
}

namespace {

void require_enumerable(const BinaryCode& code) {
  if (code.dim() > 24) throw BudgetExceeded("codeword enumeration limited to dimension 24");
}

// Visits all 2^m codewords in Gray-code order.
template <class F>
void for_each_codeword(const BinaryCode& code, F&& visit) {
  require_enumerable(code);
  BitVector w(code.length());
  visit(w);
  const std::uint64_t total = std::uint64_t{1} << code.dim();
  for (std::uint64_t g = 1; g < total; ++g) {
    w ^= code.generators()[static_cast<std::size_t>(std::countr_zero(g))];
    visit(w);
  }
}

}  // namespace

std::vector<std::uint64_t> BinaryCode::weight_distribution() const {
  std::vector<std::uint64_t> dist(n_ + 1, 0);
  for_each_codeword(*this, [&](const BitVector& w) { ++dist[w.weight()]; });
  return dist;
}

std::size_t BinaryCode::minimum_weight() const {
  const auto dist = weight_distribution();
  for (std::size_t w = 1; w < dist.size(); ++w) {
    if (dist[w] != 0) return w;
  }
  return 0;
}

bool is_doubly_even_exhaustive(const BinaryCode& code) {
  bool ok = true;
  for_each_codeword(code, [&](const BitVector& w) { ok = ok && w.weight() % 4 == 0; });
  return ok;
}

bool is_doubly_even(const BinaryCode& code) {
  const auto& g = code.generators();
  bool ok = true;
  for (std::size_t i = 0; i < g.size() && ok; ++i) {
    ok = g[i].weight() % 4 == 0;
    for (std::size_t j = i + 1; j < g.size() && ok; ++j) ok = intersect2(g[i], g[j]) % 2 == 0;
  }
  if (code.dim() <= 16 && ok != is_doubly_even_exhaustive(code)) {
    throw Error("is_doubly_even: basis criterion disagrees with enumeration");
  }
  return ok;
}

FormOracle code_forms(const BinaryCode& code) {
  FormOracle o;
  o.p = 2;
  o.k = code.dim();
  o.sigma = [&code](const FpVector& c) { return static_cast<int>((code.codeword(c).weight() / 4) % 2); };
  o.chi = [&code](const FpVector& c, const FpVector& d) {
    return static_cast<int>((intersect2(code.codeword(c), code.codeword(d)) / 2) % 2);
  };
  o.alpha = [&code](const FpVector& c, const FpVector& d, const FpVector& e) {
    return static_cast<int>(intersect3(code.codeword(c), code.codeword(d), code.codeword(e)) % 2);
  };
  return o;
}

Cvs code_to_cvs(const BinaryCode& code) {
  if (!is_doubly_even(code)) throw InvalidArgument("code_to_cvs: code is not doubly even");
  const auto& g = code.generators();
  const std::size_t k = code.dim();
  CvsData d(2, k);
  for (std::size_t i = 0; i < k; ++i) {
    d.sigma_at(i) = static_cast<int>((g[i].weight() / 4) % 2);
    for (std::size_t j = i + 1; j < k; ++j) {
      const BitVector ij = g[i] & g[j];
      d.chi_at(i, j) = static_cast<int>((ij.weight() / 2) % 2);
      for (std::size_t l = j + 1; l < k; ++l) d.alpha_at(i, j, l) = static_cast<int>(intersect2(ij, g[l]) % 2);
    }
  }
  return Cvs(std::move(d));
}

namespace {

constexpr std::string_view kChiBlock[2] = {"11111111000000", "00000011111111"};
constexpr std::string_view kAlphaBlock[3] = {"1111000111100", "1111111000010", "1000111111001"};

// Row-wise builder: every row grows by the same block width.
class BlockBuilder {
 public:
  explicit BlockBuilder(std::size_t rows) : rows_(rows) {}

  void append(const std::vector<std::pair<std::size_t, std::string_view>>& pattern, std::size_t width) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::string_view bits;
      for (const auto& [row, b] : pattern) {
        if (row == r) bits = b;
      }
      rows_[r].append(bits.empty() ? std::string(width, '0') : std::string(bits));
    }
  }

  std::vector<BitVector> finish() const {
    std::vector<BitVector> out;
    for (const auto& r : rows_) out.push_back(BitVector::from_string(r));
    return out;
  }

  std::size_t width() const { return rows_.empty() ? 0 : rows_[0].size(); }

 private:
  std::vector<std::string> rows_;
};

}  // namespace

BinaryCode cvs_to_code(const Cvs& cvs) {
  if (cvs.p() != 2) throw InvalidArgument("cvs_to_code: the CVS must be over F_2");
  const std::size_t k = cvs.dim();
  BlockBuilder b(k);
  for (std::size_t m = 0; m < k; ++m) {
    if (cvs.sigma_basis(m) == 0) {
      b.append({{m, "11111111"}}, 8);
    } else {
      b.append({{m, "1111"}}, 4);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (cvs.chi_basis(i, m) == 1) b.append({{i, kChiBlock[0]}, {m, kChiBlock[1]}}, 14);
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (cvs.alpha_basis(i, j, m) == 1) {
          b.append({{i, kAlphaBlock[0]}, {j, kAlphaBlock[1]}, {m, kAlphaBlock[2]}}, 13);
        }
      }
    }
  }
  return BinaryCode(b.width(), b.finish());
}

std::size_t cvs_to_code_length(const Cvs& cvs) {
  if (cvs.p() != 2) throw InvalidArgument("cvs_to_code_length: the CVS must be over F_2");
  const std::size_t k = cvs.dim();
  std::size_t n = 0;
  for (std::size_t i = 0; i < k; ++i) {
    n += cvs.sigma_basis(i) == 0 ? 8 : 4;
    for (std::size_t j = i + 1; j < k; ++j) {
      n += 14 * static_cast<std::size_t>(cvs.chi_basis(i, j));
      for (std::size_t l = j + 1; l < k; ++l) n += 13 * static_cast<std::size_t>(cvs.alpha_basis(i, j, l));
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// Builtins

BinaryCode builtin_hamming734() {
  return BinaryCode(7, {BitVector::from_string("1110100"), BitVector::from_string("0111010"),
                        BitVector::from_string("0011101")});
}

BinaryCode builtin_golay24() {
  // Cyclic [23,12,7] code with generator 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11,
  // extended by an overall parity bit.
  constexpr int kGen[] = {0, 2, 4, 5, 6, 10, 11};
  std::vector<BitVector> rows;
  for (std::size_t shift = 0; shift < 12; ++shift) {
    BitVector r(24);
    for (int e : kGen) r.set(shift + static_cast<std::size_t>(e));
    if (r.weight() % 2 == 1) r.set(23);
    rows.push_back(std::move(r));
  }
  BinaryCode code(24, std::move(rows));

  const auto dist = code.weight_distribution();
  std::vector<std::uint64_t> expected(25, 0);
  expected[0] = 1;
  expected[8] = 759;
  expected[12] = 2576;
  expected[16] = 759;
  expected[24] = 1;
  if (code.dim() != 12 || dist != expected || code.minimum_weight() != 8 || !is_doubly_even(code)) {
    throw Error("builtin_golay24: construction failed its self-check");
  }
  return code;
}

// ---------------------------------------------------------------------------
// Text format

BinaryCode parse_code(std::string_view text) {
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError("empty input, expected 'code' header", 1, 1);
  if (lines[0].tokens[0].text != "code" || lines[0].tokens.size() != 1) {
    throw ParseError("expected 'code' header", lines[0].number, lines[0].tokens[0].column);
  }
  std::vector<BitVector> rows;
  std::size_t length = 0;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto& line = lines[n];
    if (line.tokens.size() != 1) {
      throw ParseError("a row must be a single 0/1 string", line.number, line.tokens[1].column);
    }
    const auto& tok = line.tokens[0];
    for (std::size_t i = 0; i < tok.text.size(); ++i) {
      if (tok.text[i] != '0' && tok.text[i] != '1') {
        throw ParseError("non-binary character '" + std::string(1, tok.text[i]) + "'", line.number, tok.column + i);
      }
    }
    if (rows.empty()) {
      length = tok.text.size();
    } else if (tok.text.size() != length) {
      throw ParseError("row has length " + std::to_string(tok.text.size()) + ", expected " + std::to_string(length),
                       line.number, tok.column);
    }
    rows.push_back(BitVector::from_string(tok.text));
    try {
      BinaryCode probe(length, rows);
    } catch (const InvalidArgument&) {
      throw ParseError("row is linearly dependent on earlier rows", line.number, tok.column);
    }
  }
  return BinaryCode(length, std::move(rows));
}

std::string emit_code(const BinaryCode& code) {
  std::ostringstream out;
  out << "code\n";
  for (const auto& r : code.generators()) out << r.to_string() << '\n';
  return out.str();
}

}  // namespace codedloops
