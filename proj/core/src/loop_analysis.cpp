#include "codedloops/loop_analysis.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "codedloops/algebra.hpp"
#include "codedloops/error.hpp"

namespace codedloops {

namespace {

using Mask = std::vector<char>;

Mask mask_of(std::size_t n, const Subloop& s) {
  Mask m(n, 0);
  for (auto x : s) m[x] = 1;
  return m;
}

Subloop from_mask(const Mask& m) {
  Subloop s;
  for (std::size_t x = 0; x < m.size(); ++x) {
    if (m[x]) s.push_back(x);
  }
  return s;
}

// Extends `members`/`in` to the closure under multiplication.
void close_under_mul(const LoopTable& loop, std::vector<std::size_t>& members, Mask& in, std::size_t first_new) {
  for (std::size_t i = first_new; i < members.size(); ++i) {
    const std::size_t a = members[i];
    for (std::size_t j = 0; j <= i; ++j) {
      const std::size_t b = members[j];
      for (std::size_t c : {loop.mul(a, b), loop.mul(b, a)}) {
        if (!in[c]) {
          in[c] = 1;
          members.push_back(c);
        }
      }
    }
  }
}

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

std::vector<int> prime_factors(std::uint64_t n) {
  std::vector<int> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(static_cast<int>(p));
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

bool is_prime_power_of(std::uint64_t n, std::uint64_t p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

void require_loop(const LoopTable& loop) {
  if (!loop.is_loop()) throw InvalidArgument("table is not a loop");
}

}  // namespace

// ---------------------------------------------------------------------------
// Identities

IdentityResult check_moufang(const LoopTable& loop) {
  const std::size_t n = loop.order();
  auto m = [&](std::size_t a, std::size_t b) { return loop.mul(a, b); };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xy = m(x, y);
      const std::size_t yx = m(y, x);
      const std::size_t xyx = m(xy, x);
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t zx = m(z, x);
        const std::size_t xz = m(x, z);
        const std::size_t yz = m(y, z);
        if (m(m(yx, z), x) != m(y, m(x, zx))) return {false, "((yx)z)x = y(x(zx))", {x, y, z}};
        if (m(xyx, z) != m(x, m(y, xz))) return {false, "((xy)x)z = x(y(xz))", {x, y, z}};
        const std::size_t mid = m(xy, zx);
        if (m(m(x, yz), x) != mid) return {false, "(x(yz))x = (xy)(zx)", {x, y, z}};
        if (mid != m(x, m(yz, x))) return {false, "(xy)(zx) = x((yz)x)", {x, y, z}};
      }
    }
  }
  return {};
}

IdentityResult check_associative(const LoopTable& loop) {
  const std::size_t n = loop.order();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xy = loop.mul(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        if (loop.mul(xy, z) != loop.mul(x, loop.mul(y, z))) return {false, "(xy)z = x(yz)", {x, y, z}};
      }
    }
  }
  return {};
}

bool is_commutative(const LoopTable& loop) {
  const std::size_t n = loop.order();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (loop.mul(x, y) != loop.mul(y, x)) return false;
    }
  }
  return true;
}

bool mk_law_holds(const LoopTable& loop, std::int64_t k) {
  require_loop(loop);
  const std::size_t n = loop.order();
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t xk = power(loop, x, k);
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xky_x = loop.mul(loop.mul(xk, y), x);
      for (std::size_t z = 0; z < n; ++z) {
        if (loop.mul(xk, loop.mul(y, loop.mul(x, z))) != loop.mul(xky_x, z)) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Element arithmetic

std::size_t power(const LoopTable& loop, std::size_t x, std::int64_t n) {
  require_loop(loop);
  if (n < 0) {
    x = loop.inv(x);
    n = -n;
  }
  std::size_t acc = loop.identity();
  for (std::int64_t i = 0; i < n; ++i) acc = loop.mul(x, acc);
  return acc;
}

std::size_t element_order(const LoopTable& loop, std::size_t x) {
  require_loop(loop);
  std::size_t acc = x;
  std::size_t k = 1;
  while (acc != loop.identity()) {
    acc = loop.mul(x, acc);
    if (++k > loop.order()) throw Error("element " + std::to_string(x) + " has no finite order under x^(n+1) = x x^n");
  }
  return k;
}

std::uint64_t exponent(const LoopTable& loop) {
  std::uint64_t e = 1;
  for (std::size_t x = 0; x < loop.order(); ++x) e = lcm64(e, element_order(loop, x));
  return e;
}

std::uint64_t exponent(const LoopTable& loop, const Subloop& s) {
  std::uint64_t e = 1;
  for (auto x : s) e = lcm64(e, element_order(loop, x));
  return e;
}

std::size_t commutator(const LoopTable& loop, std::size_t x, std::size_t y) {
  return loop.mul(loop.inv(loop.mul(y, x)), loop.mul(x, y));
}

std::size_t associator(const LoopTable& loop, std::size_t x, std::size_t y, std::size_t z) {
  return loop.mul(loop.inv(loop.mul(x, loop.mul(y, z))), loop.mul(loop.mul(x, y), z));
}

// ---------------------------------------------------------------------------
// Subloops

Subloop generated_subloop(const LoopTable& loop, const std::vector<std::size_t>& generators) {
  require_loop(loop);
  Mask in(loop.order(), 0);
  std::vector<std::size_t> members{loop.identity()};
  in[loop.identity()] = 1;
  for (auto g : generators) {
    if (g >= loop.order()) throw InvalidArgument("element index out of range");
    if (!in[g]) {
      in[g] = 1;
      members.push_back(g);
    }
  }
  // In a finite loop a nonempty subset closed under multiplication is a subloop.
  close_under_mul(loop, members, in, 0);
  std::sort(members.begin(), members.end());
  return members;
}

bool is_subloop(const LoopTable& loop, const Subloop& s) {
  if (!loop.is_loop()) return false;
  const Mask in = mask_of(loop.order(), s);
  if (!in[loop.identity()]) return false;
  for (auto a : s) {
    for (auto b : s) {
      if (!in[loop.mul(a, b)]) return false;
    }
  }
  return true;
}

Subloop intersect(const Subloop& a, const Subloop& b) {
  Subloop out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

bool nuclear(const LoopTable& loop, std::size_t a) {
  const std::size_t n = loop.order();
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t ax = loop.mul(a, x);
    const std::size_t xa = loop.mul(x, a);
    for (std::size_t y = 0; y < n; ++y) {
      if (loop.mul(ax, y) != loop.mul(a, loop.mul(x, y))) return false;
      if (loop.mul(xa, y) != loop.mul(x, loop.mul(a, y))) return false;
      if (loop.mul(loop.mul(x, y), a) != loop.mul(x, loop.mul(y, a))) return false;
    }
  }
  return true;
}

bool commutes_with_all(const LoopTable& loop, std::size_t a) {
  for (std::size_t x = 0; x < loop.order(); ++x) {
    if (loop.mul(a, x) != loop.mul(x, a)) return false;
  }
  return true;
}

}  // namespace

Subloop nucleus(const LoopTable& loop) {
  require_loop(loop);
  Subloop out;
  for (std::size_t a = 0; a < loop.order(); ++a) {
    if (nuclear(loop, a)) out.push_back(a);
  }
  return out;
}

Subloop moufang_center(const LoopTable& loop) {
  require_loop(loop);
  Subloop out;
  for (std::size_t a = 0; a < loop.order(); ++a) {
    if (commutes_with_all(loop, a)) out.push_back(a);
  }
  return out;
}

Subloop center(const LoopTable& loop) {
  require_loop(loop);
  Subloop out;
  for (std::size_t a = 0; a < loop.order(); ++a) {
    if (commutes_with_all(loop, a) && nuclear(loop, a)) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normality

namespace {

// Calls visit(image) for every inner-map generator image of h; stops when visit returns false.
template <typename Visit>
bool for_inner_images(const LoopTable& loop, std::size_t h, Visit&& visit) {
  const std::size_t n = loop.order();
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t hx = loop.mul(h, x);
    const std::size_t xh = loop.mul(x, h);
    if (!visit(loop.ldiv(x, hx))) return false;
    for (std::size_t y = 0; y < n; ++y) {
      if (!visit(loop.ldiv(loop.mul(y, x), loop.mul(y, xh)))) return false;
      if (!visit(loop.rdiv(loop.mul(hx, y), loop.mul(x, y)))) return false;
    }
  }
  return true;
}

}  // namespace

bool is_normal(const LoopTable& loop, const Subloop& s) {
  if (!is_subloop(loop, s)) return false;
  const Mask in = mask_of(loop.order(), s);
  const Mask central = mask_of(loop.order(), center(loop));
  for (auto h : s) {
    if (central[h]) continue;
    if (!for_inner_images(loop, h, [&](std::size_t img) { return in[img] != 0; })) return false;
  }
  return true;
}

bool is_normal_by_cosets(const LoopTable& loop, const Subloop& s) {
  if (!is_subloop(loop, s)) return false;
  const std::size_t n = loop.order();
  auto left = [&](std::size_t x) {
    std::vector<std::size_t> c;
    for (auto h : s) c.push_back(loop.mul(x, h));
    std::sort(c.begin(), c.end());
    return c;
  };
  auto right = [&](std::size_t x) {
    std::vector<std::size_t> c;
    for (auto h : s) c.push_back(loop.mul(h, x));
    std::sort(c.begin(), c.end());
    return c;
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (left(x) != right(x)) return false;
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto xy_s = left(loop.mul(x, y));
      std::vector<std::size_t> c;
      for (auto h : s) c.push_back(loop.mul(x, loop.mul(y, h)));
      std::sort(c.begin(), c.end());
      if (c != xy_s) return false;
      c.clear();
      for (auto h : s) c.push_back(loop.mul(loop.mul(h, x), y));
      std::sort(c.begin(), c.end());
      if (c != right(loop.mul(x, y))) return false;
    }
  }
  return true;
}

Subloop normal_closure(const LoopTable& loop, const std::vector<std::size_t>& elements) {
  require_loop(loop);
  const std::size_t n = loop.order();
  const Mask central = mask_of(n, center(loop));
  Subloop s = generated_subloop(loop, elements);
  Mask done(n, 0);
  while (true) {
    Mask in = mask_of(n, s);
    std::vector<std::size_t> fresh;
    for (auto h : s) {
      if (done[h] || central[h]) continue;
      done[h] = 1;
      for_inner_images(loop, h, [&](std::size_t img) {
        if (!in[img]) {
          in[img] = 1;
          fresh.push_back(img);
        }
        return true;
      });
    }
    if (fresh.empty()) return s;
    fresh.insert(fresh.end(), s.begin(), s.end());
    s = generated_subloop(loop, fresh);
  }
}

DerivedSubloops derived_subloops(const LoopTable& loop) {
  require_loop(loop);
  const std::size_t n = loop.order();
  Mask comm(n, 0), assoc(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      comm[commutator(loop, x, y)] = 1;
      const std::size_t xy = loop.mul(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t lhs = loop.mul(xy, z);
        const std::size_t rhs = loop.mul(x, loop.mul(y, z));
        if (lhs != rhs) assoc[loop.mul(loop.inv(rhs), lhs)] = 1;
      }
    }
  }
  DerivedSubloops out;
  const Subloop a = from_mask(assoc);
  out.nuclearly_derived = normal_closure(loop, a);
  Subloop both = from_mask(comm);
  both.insert(both.end(), a.begin(), a.end());
  out.centrally_derived = normal_closure(loop, both);
  return out;
}

Quotient quotient(const LoopTable& loop, const Subloop& s) {
  if (!is_normal(loop, s)) throw InvalidArgument("quotient by a subloop that is not normal");
  const std::size_t n = loop.order();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> coset(n, kNone);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < n; ++x) {
    if (coset[x] != kNone) continue;
    for (auto h : s) coset[loop.mul(x, h)] = reps.size();
    reps.push_back(x);
  }
  const std::size_t m = reps.size();
  std::vector<std::uint16_t> t(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) t[a * m + b] = static_cast<std::uint16_t>(coset[loop.mul(reps[a], reps[b])]);
  }
  return Quotient{LoopTable(m, std::move(t)), std::move(coset)};
}

std::vector<Subloop> upper_central_series(const LoopTable& loop) {
  require_loop(loop);
  std::vector<Subloop> chain{Subloop{loop.identity()}};
  while (true) {
    const Quotient q = quotient(loop, chain.back());
    const Mask zq = mask_of(q.table.order(), center(q.table));
    Subloop next;
    for (std::size_t x = 0; x < loop.order(); ++x) {
      if (zq[q.coset_of[x]]) next.push_back(x);
    }
    if (next.size() == chain.back().size()) return chain;
    chain.push_back(std::move(next));
  }
}

std::optional<std::size_t> nilpotency_class(const LoopTable& loop) {
  const auto chain = upper_central_series(loop);
  if (chain.back().size() != loop.order()) return std::nullopt;
  return chain.size() - 1;
}

// ---------------------------------------------------------------------------
// Frattini subloop

Subloop frattini_by_maximal_subloops(const LoopTable& loop, std::size_t limit) {
  require_loop(loop);
  const std::size_t n = loop.order();
  if (n > limit) {
    throw BudgetExceeded("maximal-subloop enumeration limited to order " + std::to_string(limit));
  }
  if (n == 1) return {loop.identity()};

  struct MaskHash {
    std::size_t operator()(const Mask& m) const noexcept {
      return std::hash<std::string_view>{}(std::string_view(m.data(), m.size()));
    }
  };
  std::unordered_set<Mask, MaskHash> seen;
  std::vector<Mask> stack;
  Mask trivial(n, 0);
  trivial[loop.identity()] = 1;
  seen.insert(trivial);
  stack.push_back(trivial);

  Mask phi(n, 1);
  bool any_maximal = false;
  while (!stack.empty()) {
    Mask s = std::move(stack.back());
    stack.pop_back();
    const Subloop base = from_mask(s);
    bool maximal = true;
    for (std::size_t x = 0; x < n; ++x) {
      if (s[x]) continue;
      std::vector<std::size_t> members = base;
      Mask in = s;
      in[x] = 1;
      members.push_back(x);
      close_under_mul(loop, members, in, base.size());
      if (members.size() == n) continue;
      maximal = false;
      if (seen.insert(in).second) stack.push_back(std::move(in));
    }
    if (maximal) {
      any_maximal = true;
      for (std::size_t x = 0; x < n; ++x) phi[x] = phi[x] && s[x];
    }
  }
  if (!any_maximal) return {loop.identity()};
  return from_mask(phi);
}

Subloop frattini_by_generators(const LoopTable& loop, int p) {
  require_loop(loop);
  const std::size_t n = loop.order();
  Mask gens(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    gens[power(loop, x, p)] = 1;
    for (std::size_t y = 0; y < n; ++y) {
      gens[commutator(loop, x, y)] = 1;
      for (std::size_t z = 0; z < n; ++z) gens[associator(loop, x, y, z)] = 1;
    }
  }
  return generated_subloop(loop, from_mask(gens));
}

Subloop frattini(const LoopTable& loop, const FrattiniOptions& options) {
  require_loop(loop);
  const auto p = loop_prime(loop);
  if (loop.order() <= options.oracle_limit) {
    Subloop phi = frattini_by_maximal_subloops(loop, options.oracle_limit);
    if (p && nilpotency_class(loop)) {
      if (frattini_by_generators(loop, *p) != phi) {
        throw Error("Frattini subloop: maximal-subloop intersection and generator formula disagree");
      }
    }
    return phi;
  }
  if (!p) throw BudgetExceeded("Frattini subloop of a loop that is not a p-loop needs order <= oracle limit");
  return frattini_by_generators(loop, *p);
}

std::optional<int> loop_prime(const LoopTable& loop) {
  const auto f = prime_factors(loop.order());
  if (f.size() != 1) return std::nullopt;
  return f[0];
}

// ---------------------------------------------------------------------------
// Torsion

Subloop torsion_component(const LoopTable& loop, int p) {
  if (p < 2 || !is_prime(p)) throw InvalidArgument("torsion component needs a prime");
  Subloop out;
  for (std::size_t x = 0; x < loop.order(); ++x) {
    if (is_prime_power_of(element_order(loop, x), static_cast<std::uint64_t>(p))) out.push_back(x);
  }
  return out;
}

TorsionReport torsion_components(const LoopTable& loop) {
  require_loop(loop);
  TorsionReport r;
  r.primes = prime_factors(loop.order());
  const std::size_t n = loop.order();
  std::vector<std::size_t> component(n, r.primes.size());
  for (std::size_t i = 0; i < r.primes.size(); ++i) {
    r.components.push_back(torsion_component(loop, r.primes[i]));
    for (auto x : r.components.back()) {
      if (x != loop.identity()) component[x] = i;
    }
    r.subloops = r.subloops && is_subloop(loop, r.components.back());
  }
  std::uint64_t prod = 1;
  for (const auto& c : r.components) prod *= c.size();
  r.full = prod == n;

  const std::size_t e = loop.identity();
  for (std::size_t x = 0; x < n && r.independent; ++x) {
    for (std::size_t y = 0; y < n && r.independent; ++y) {
      if (component[x] == component[y] || x == e || y == e) continue;
      if (commutator(loop, x, y) != e) r.independent = false;
      for (std::size_t z = 0; z < n && r.independent; ++z) {
        if (z == e) continue;
        if (associator(loop, x, y, z) != e || associator(loop, x, z, y) != e || associator(loop, z, x, y) != e) {
          r.independent = false;
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Class 2 identities

bool Class2Report::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Class2Check& c) { return c.passed; });
}

Class2Report class2_associator_identities(const LoopTable& loop) {
  require_loop(loop);
  const auto cls = nilpotency_class(loop);
  if (!cls || *cls > 2) throw InvalidArgument("class 2 identities need central nilpotency class <= 2");

  const std::size_t n = loop.order();
  const Subloop z = center(loop);
  // Commutators and associators are constant on cosets of the center.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> rep_of(n, kNone);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < n; ++x) {
    if (rep_of[x] != kNone) continue;
    for (auto c : z) rep_of[loop.mul(x, c)] = reps.size();
    reps.push_back(x);
  }
  const std::size_t t = reps.size();
  std::vector<std::size_t> assoc(t * t * t), comm(t * t);
  for (std::size_t a = 0; a < t; ++a) {
    for (std::size_t b = 0; b < t; ++b) {
      comm[a * t + b] = commutator(loop, reps[a], reps[b]);
      for (std::size_t c = 0; c < t; ++c) assoc[(a * t + b) * t + c] = associator(loop, reps[a], reps[b], reps[c]);
    }
  }
  auto A = [&](std::size_t a, std::size_t b, std::size_t c) { return assoc[(rep_of[a] * t + rep_of[b]) * t + rep_of[c]]; };
  auto K = [&](std::size_t a, std::size_t b) { return comm[rep_of[a] * t + rep_of[b]]; };
  auto m = [&](std::size_t a, std::size_t b) { return loop.mul(a, b); };
  auto inv = [&](std::size_t a) { return loop.inv(a); };

  Class2Report report;
  auto fail = [&](const char* name, std::vector<std::size_t> w) {
    for (auto& c : report.checks) {
      if (c.name == name && c.passed) {
        c.passed = false;
        c.witness = std::move(w);
      }
    }
  };
  for (const char* name : {"assocskew", "assocpowerlin", "commmultilin", "fivecycle", "exchange"}) {
    report.checks.push_back({name, true, {}});
  }

  const auto e = static_cast<std::int64_t>(exponent(loop));
  for (auto a : reps) {
    for (auto b : reps) {
      for (auto c : reps) {
        const std::size_t abc = A(a, b, c);
        if (abc != A(b, c, a) || abc != inv(A(b, a, c))) fail("assocskew", {a, b, c});
        for (std::int64_t k = -1; k <= e; ++k) {
          if (A(power(loop, a, k), b, c) != power(loop, abc, k)) fail("assocpowerlin", {a, b, c});
        }
        const std::size_t ac = K(a, c);
        const std::size_t rhs = m(m(m(ac, K(ac, b)), K(b, c)), power(loop, abc, 3));
        if (K(m(a, b), c) != rhs) fail("commmultilin", {a, b, c});
      }
    }
  }
  for (auto c : reps) {
    for (auto d : reps) {
      const std::size_t cd = m(c, d);
      for (auto x : reps) {
        const std::size_t dx = m(d, x);
        const std::size_t cdx = A(c, d, x);
        for (auto f : reps) {
          // alpha(cd,e,f) = alpha(c,d,e) alpha(c,de,f) alpha(d,e,f) alpha(c,d,ef)^-1, with e = x
          const std::size_t rhs5 = m(m(m(cdx, A(c, dx, f)), A(d, x, f)), inv(A(c, d, m(x, f))));
          if (A(cd, x, f) != rhs5) fail("fivecycle", {c, d, x, f});
          // alpha(wx,y,z) = alpha(wz,y,x) alpha(w,x,y) alpha(w,y,z) alpha(x,y,z)^2, with w = c, x = d, y = x, z = f
          const std::size_t xyz = A(d, x, f);
          const std::size_t rhsx = m(m(m(A(m(c, f), x, d), A(c, d, x)), A(c, x, f)), m(xyz, xyz));
          if (A(cd, x, f) != rhsx) fail("exchange", {c, d, x, f});
        }
      }
    }
  }
  return report;
}

}  // namespace codedloops
