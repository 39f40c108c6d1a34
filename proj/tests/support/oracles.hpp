#pragma once

// Reference implementations written directly from the definitions. They share
// no code with the library beyond LoopTable and the data carriers.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "codedloops/binary_code.hpp"
#include "codedloops/cvs.hpp"
#include "codedloops/loop_table.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Octonions by the Cayley-Dickson doubling (a, b)(c, d) = (ac - d*b, da + bc*).

inline std::vector<int> cd_conj(const std::vector<int>& x) {
  std::vector<int> y(x.size());
  y[0] = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) y[i] = -x[i];
  return y;
}

inline std::vector<int> cd_mul(const std::vector<int>& x, const std::vector<int>& y) {
  const std::size_t n = x.size();
  if (n == 1) return {x[0] * y[0]};
  const std::size_t h = n / 2;
  std::vector<int> a(x.begin(), x.begin() + h), b(x.begin() + h, x.end());
  std::vector<int> c(y.begin(), y.begin() + h), d(y.begin() + h, y.end());
  auto sub = [](std::vector<int> u, const std::vector<int>& v) {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= v[i];
    return u;
  };
  auto add = [](std::vector<int> u, const std::vector<int>& v) {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += v[i];
    return u;
  };
  auto left = sub(cd_mul(a, c), cd_mul(cd_conj(d), b));
  auto right = add(cd_mul(d, a), cd_mul(b, cd_conj(c)));
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

/// The 16 units +-e_i of the octonions; element s * 8 + i is (-1)^s e_i.
inline codedloops::LoopTable octonion_units() {
  auto vec = [](std::size_t e) {
    std::vector<int> v(8, 0);
    v[e % 8] = e < 8 ? 1 : -1;
    return v;
  };
  std::vector<std::uint16_t> t(256);
  for (std::size_t a = 0; a < 16; ++a) {
    for (std::size_t b = 0; b < 16; ++b) {
      const auto r = cd_mul(vec(a), vec(b));
      for (std::size_t i = 0; i < 8; ++i) {
        if (r[i] != 0) t[a * 16 + b] = static_cast<std::uint16_t>(r[i] > 0 ? i : i + 8);
      }
    }
  }
  return codedloops::LoopTable(16, std::move(t));
}

// ---------------------------------------------------------------------------
// CVS forms from basis data, by the defining expansions.

struct Forms {
  int p;
  std::size_t k;
  std::vector<int> sigma;  // k
  std::vector<int> chi;    // k*k, i < j read
  std::vector<int> alpha;  // k^3, i < j < l read

  explicit Forms(const codedloops::Cvs& cvs) : p(cvs.p()), k(cvs.dim()) {
    const auto d = cvs.data();
    sigma = d.sigma;
    chi = d.chi;
    alpha = d.alpha;
  }

  int mod(long v) const { return static_cast<int>(((v % p) + p) % p); }

  int chi_full(std::size_t i, std::size_t j) const {
    if (i == j) return 0;
    return i < j ? chi[i * k + j] : mod(-static_cast<long>(chi[j * k + i]));
  }

  int alpha_full(std::size_t i, std::size_t j, std::size_t l) const {
    if (i == j || j == l || i == l) return 0;
    std::array<std::size_t, 3> idx{i, j, l};
    int sign = 1;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b + 1 < 3; ++b)
        if (idx[b] > idx[b + 1]) {
          std::swap(idx[b], idx[b + 1]);
          sign = -sign;
        }
    return mod(sign * static_cast<long>(alpha[(idx[0] * k + idx[1]) * k + idx[2]]));
  }

  int sigma_of(const std::vector<int>& c) const {
    long s = 0;
    for (std::size_t i = 0; i < k; ++i) s += c[i] * sigma[i];
    if (p == 2) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
          s += c[i] * c[j] * chi[i * k + j];
          for (std::size_t l = j + 1; l < k; ++l) s += c[i] * c[j] * c[l] * alpha[(i * k + j) * k + l];
        }
    }
    return mod(s);
  }

  static std::vector<int> plus(const std::vector<int>& a, const std::vector<int>& b, int p) {
    std::vector<int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
    return r;
  }

  int chi_of(const std::vector<int>& c, const std::vector<int>& d) const {
    if (p == 2) return mod(sigma_of(plus(c, d, 2)) + sigma_of(c) + sigma_of(d));
    long s = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) s += c[i] * d[j] * chi_full(i, j);
    return mod(s);
  }

  int alpha_of(const std::vector<int>& c, const std::vector<int>& d, const std::vector<int>& e) const {
    if (p == 2) return mod(chi_of(plus(c, d, 2), e) + chi_of(c, e) + chi_of(d, e));
    long s = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t l = 0; l < k; ++l) s += c[i] * d[j] * e[l] * alpha_full(i, j, l);
    return mod(s);
  }
};

// ---------------------------------------------------------------------------
// Code loop forms from codeword weights.

inline std::vector<int> codeword(const codedloops::BinaryCode& code, const std::vector<int>& c) {
  std::vector<int> w(code.length(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i]) continue;
    for (std::size_t b = 0; b < code.length(); ++b) w[b] ^= code.generators()[i].get(b) ? 1 : 0;
  }
  return w;
}

inline int code_sigma(const codedloops::BinaryCode& code, const std::vector<int>& c) {
  const auto w = codeword(code, c);
  return (std::accumulate(w.begin(), w.end(), 0) / 4) % 2;
}

inline int code_chi(const codedloops::BinaryCode& code, const std::vector<int>& c, const std::vector<int>& d) {
  const auto u = codeword(code, c), v = codeword(code, d);
  int n = 0;
  for (std::size_t i = 0; i < u.size(); ++i) n += u[i] & v[i];
  return (n / 2) % 2;
}

inline int code_alpha(const codedloops::BinaryCode& code, const std::vector<int>& c, const std::vector<int>& d,
                      const std::vector<int>& e) {
  const auto u = codeword(code, c), v = codeword(code, d), w = codeword(code, e);
  int n = 0;
  for (std::size_t i = 0; i < u.size(); ++i) n += u[i] & v[i] & w[i];
  return n % 2;
}

// ---------------------------------------------------------------------------
// Loop isomorphism by trying every bijection fixing the identity.

inline bool isomorphic_by_permutation(const codedloops::LoopTable& a, const codedloops::LoopTable& b) {
  const std::size_t n = a.order();
  if (n != b.order()) return false;
  std::vector<std::size_t> rest;
  for (std::size_t x = 0; x < n; ++x)
    if (x != b.identity()) rest.push_back(x);
  std::vector<std::size_t> dom;
  for (std::size_t x = 0; x < n; ++x)
    if (x != a.identity()) dom.push_back(x);
  do {
    std::vector<std::size_t> f(n);
    f[a.identity()] = b.identity();
    for (std::size_t i = 0; i < dom.size(); ++i) f[dom[i]] = rest[i];
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) ok = f[a.mul(x, y)] == b.mul(f[x], f[y]);
    if (ok) return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

// ---------------------------------------------------------------------------
// Naive table identities.

inline bool moufang_naive(const codedloops::LoopTable& t) {
  const std::size_t n = t.order();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (t.mul(t.mul(x, y), t.mul(z, x)) != t.mul(x, t.mul(t.mul(y, z), x))) return false;
      }
  return true;
}

/// Intersection of all maximal subloops, by closing every subset of at most
/// `rank` elements. Adequate for loops generated by that many elements.
inline std::vector<std::size_t> frattini_naive(const codedloops::LoopTable& t, std::size_t rank) {
  const std::size_t n = t.order();
  auto close = [&](std::vector<char> in) {
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (in[x] && in[y] && !in[t.mul(x, y)]) in[t.mul(x, y)] = grew = true;
    }
    return in;
  };
  std::vector<std::vector<char>> proper;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    std::vector<char> in(n, 0);
    in[t.identity()] = 1;
    for (auto x : pick) in[x] = 1;
    in = close(in);
    if (std::count(in.begin(), in.end(), 1) < static_cast<long>(n)) proper.push_back(in);
    if (pick.size() == rank) return;
    for (std::size_t x = from; x < n; ++x) {
      pick.push_back(x);
      self(self, x + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  // Maximal among the proper subloops found.
  std::vector<char> phi(n, 1);
  for (const auto& s : proper) {
    bool maximal = true;
    for (const auto& o : proper) {
      bool contains = true, strictly = false;
      for (std::size_t x = 0; x < n; ++x) {
        if (s[x] && !o[x]) contains = false;
        if (o[x] && !s[x]) strictly = true;
      }
      if (contains && strictly) {
        maximal = false;
        break;
      }
    }
    if (maximal)
      for (std::size_t x = 0; x < n; ++x) phi[x] &= s[x];
  }
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < n; ++x)
    if (phi[x]) out.push_back(x);
  return out;
}

}  // namespace oracle
