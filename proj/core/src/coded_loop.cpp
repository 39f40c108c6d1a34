#include "codedloops/coded_loop.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <numeric>
#include <random>
#include <sstream>

#include "codedloops/error.hpp"
#include "extension_check.hpp"

namespace codedloops {

std::string LoopElement::to_string() const {
  std::ostringstream out;
  out << '(' << z << "; " << v.to_string() << ')';
  return out.str();
}

namespace detail {

class Cocycle {
 public:
  virtual ~Cocycle() = default;
  virtual int theta(std::span<const int> u, std::span<const int> w) const = 0;
};

struct ThetaCache {
  static constexpr std::uint16_t kEmpty = 0xFFFF;
  explicit ThetaCache(std::uint64_t n) : size(n), slots(new std::atomic<std::uint16_t>[n * n]) {
    for (std::uint64_t i = 0; i < n * n; ++i) slots[i].store(kEmpty, std::memory_order_relaxed);
  }
  std::uint64_t size;
  std::unique_ptr<std::atomic<std::uint16_t>[]> slots;
};

namespace {

// theta(u, w) = sum_m [ s_m floor((u_m + w_m) / q_m) + u_m chi(x_m, w') - (w_m + 2 u_m) alpha(u', w', x_m) ]
// where u', w' are the coordinates before slot m.
class SlotCocycle final : public Cocycle {
 public:
  explicit SlotCocycle(ExtensionSpec spec) : s_(std::move(spec)), k_(s_.orders.size()) {
    chi_terms_.resize(k_);
    quad_terms_.resize(k_);
    alpha_terms_.resize(k_);
    for (std::size_t m = 0; m < k_; ++m) {
      for (std::size_t j = 0; j < m; ++j) {
        const int c = s_.chi[m * k_ + j];
        if (c != 0) chi_terms_[m].push_back({j, 0, c});
      }
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const int a = s_.alpha[(i * k_ + j) * k_ + m];
          if (a == 0) continue;
          alpha_terms_[m].push_back({i, j, a});
          if (s_.quadratic_chi && i < j) quad_terms_[m].push_back({i, j, a});
        }
      }
    }
  }

  int theta(std::span<const int> u, std::span<const int> w) const override {
    std::int64_t acc = 0;
    for (std::size_t m = 0; m < k_; ++m) {
      const std::int64_t a = u[m];
      const std::int64_t b = w[m];
      if (a + b >= s_.orders[m]) acc += s_.powers[m];
      if (a != 0) {
        std::int64_t c = 0;
        for (const auto& t : chi_terms_[m]) c += static_cast<std::int64_t>(w[t.i]) * t.v;
        for (const auto& t : quad_terms_[m]) c += static_cast<std::int64_t>(w[t.i]) * w[t.j] * t.v;
        acc += a * c;
      }
      if (a != 0 || b != 0) {
        std::int64_t al = 0;
        for (const auto& t : alpha_terms_[m]) al += static_cast<std::int64_t>(u[t.i]) * w[t.j] * t.v;
        acc -= (b + 2 * a) * al;
      }
    }
    return static_cast<int>(mod_floor(acc, s_.zmod));
  }

 private:
  struct Term {
    std::size_t i;
    std::size_t j;
    int v;
  };
  ExtensionSpec s_;
  std::size_t k_;
  std::vector<std::vector<Term>> chi_terms_;
  std::vector<std::vector<Term>> quad_terms_;
  std::vector<std::vector<Term>> alpha_terms_;
};

// (z1, d1, e1)(z2, d2, e2) = (z1 + z2 + z0 + theta_D + theta_E, d1 d2, e1 e2)
class SdcpCocycle final : public Cocycle {
 public:
  SdcpCocycle(CodedLoop d, CodedLoop e, Cvs combined)
      : d_(std::move(d)), e_(std::move(e)), combined_(std::move(combined)) {}

  int theta(std::span<const int> u, std::span<const int> w) const override {
    const std::size_t kd = d_.dim();
    const std::size_t k = combined_.dim();
    const int p = combined_.p();
    auto part = [&](std::span<const int> x, bool first) {
      std::vector<int> c(k, 0);
      for (std::size_t i = 0; i < k; ++i) {
        if ((i < kd) == first) c[i] = x[i];
      }
      return FpVector::uniform(std::move(c), p);
    };
    const int z0 = sdcp_error(combined_, part(u, true), part(u, false), part(w, true), part(w, false));
    const int td = d_.theta(u.subspan(0, kd), w.subspan(0, kd));
    const int te = e_.theta(u.subspan(kd), w.subspan(kd));
    return static_cast<int>(mod_floor(static_cast<std::int64_t>(z0) + td + te, p));
  }

 private:
  CodedLoop d_;
  CodedLoop e_;
  Cvs combined_;
};

}  // namespace
}  // namespace detail

ExtensionSpec extension_spec(const Cvs& cvs) {
  const std::size_t k = cvs.dim();
  ExtensionSpec s;
  s.zmod = cvs.p();
  s.orders.assign(k, cvs.p());
  s.powers.resize(k);
  s.chi.resize(k * k);
  s.alpha.resize(k * k * k);
  for (std::size_t i = 0; i < k; ++i) {
    s.powers[i] = cvs.sigma_basis(i);
    for (std::size_t j = 0; j < k; ++j) {
      s.chi[i * k + j] = cvs.chi_basis(i, j);
      for (std::size_t l = 0; l < k; ++l) s.alpha[(i * k + j) * k + l] = cvs.alpha_basis(i, j, l);
    }
  }
  s.quadratic_chi = cvs.p() == 2;
  return s;
}

// ---------------------------------------------------------------------------
// CodedLoop

CodedLoop CodedLoop::build(const Cvs& cvs, const BuildOptions& options) {
  if (options.validate) {
    const auto report = validate_axioms(cvs, options.validation);
    if (const auto* f = report.first_failure()) {
      throw InvalidArgument("build: CVS fails identity " + f->name);
    }
  }
  return from_spec(extension_spec(cvs), cvs, options);
}

CodedLoop CodedLoop::from_spec(ExtensionSpec spec, std::optional<Cvs> cvs, const BuildOptions& options) {
  const std::size_t k = spec.orders.size();
  if (spec.zmod < 1) throw InvalidArgument("order of Z must be positive");
  if (spec.powers.size() != k || spec.chi.size() != k * k || spec.alpha.size() != k * k * k) {
    throw InvalidArgument("extension data does not match the number of slots");
  }
  for (int q : spec.orders) {
    if (q < 1) throw InvalidArgument("slot orders must be positive");
  }
  CodedLoop loop;
  loop.zmod_ = spec.zmod;
  loop.moduli_ = spec.orders;
  loop.quotient_order_ = 1;
  for (int q : spec.orders) {
    if (loop.quotient_order_ > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(q)) {
      throw BudgetExceeded("quotient order overflows");
    }
    loop.quotient_order_ *= static_cast<std::uint64_t>(q);
  }
  loop.alpha_ = spec.alpha;
  for (auto& a : loop.alpha_) a = static_cast<int>(mod_floor(a, spec.zmod));
  loop.cvs_ = std::move(cvs);
  loop.cocycle_ = std::make_shared<detail::SlotCocycle>(std::move(spec));
  loop.enable_cache(options.theta_cache_elements);
  return loop;
}

void CodedLoop::enable_cache(std::uint64_t limit) {
  cache_.reset();
  if (quotient_order_ <= limit && zmod_ < detail::ThetaCache::kEmpty) {
    cache_ = std::make_shared<detail::ThetaCache>(quotient_order_);
  }
}

const Cvs& CodedLoop::cvs() const {
  if (!cvs_) throw InvalidArgument("this loop was not built from a CVS");
  return *cvs_;
}

void CodedLoop::require(const LoopElement& a) const {
  if (a.v.moduli() != moduli_) throw InvalidArgument("element " + a.to_string() + " does not belong to this loop");
  if (a.z < 0 || a.z >= zmod_) throw InvalidArgument("element " + a.to_string() + " has an unreduced z-part");
}

LoopElement CodedLoop::identity() const { return {0, FpVector::zero(moduli_)}; }

LoopElement CodedLoop::generator(std::size_t i) const {
  if (i >= dim()) throw InvalidArgument("generator index " + std::to_string(i + 1) + " out of range");
  return {0, FpVector::basis(moduli_, i)};
}

LoopElement CodedLoop::central(std::int64_t a) const {
  return {static_cast<int>(mod_floor(a, zmod_)), FpVector::zero(moduli_)};
}

LoopElement CodedLoop::element(std::int64_t z, const FpVector& v) const {
  LoopElement e{static_cast<int>(mod_floor(z, zmod_)), v};
  require(e);
  return e;
}

int CodedLoop::theta_uncached(std::span<const int> u, std::span<const int> w) const {
  std::int64_t t = cocycle_->theta(u, w);
  if (!kappa_.empty()) t += alpha(u, kappa_, w);
  return static_cast<int>(mod_floor(t, zmod_));
}

int CodedLoop::theta(std::span<const int> u, std::span<const int> w) const {
  if (!cache_) return theta_uncached(u, w);
  std::uint64_t ru = 0;
  std::uint64_t rw = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    ru = ru * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(u[i]);
    rw = rw * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(w[i]);
  }
  auto& slot = cache_->slots[ru * cache_->size + rw];
  std::uint16_t v = slot.load(std::memory_order_relaxed);
  if (v == detail::ThetaCache::kEmpty) {
    v = static_cast<std::uint16_t>(theta_uncached(u, w));
    slot.store(v, std::memory_order_relaxed);
  }
  return v;
}

int CodedLoop::alpha(std::span<const int> c, std::span<const int> d, std::span<const int> e) const {
  const std::size_t k = dim();
  std::int64_t s = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (d[j] == 0 || j == i) continue;
      const std::int64_t cd = static_cast<std::int64_t>(c[i]) * d[j];
      const int* row = &alpha_[(i * k + j) * k];
      for (std::size_t l = 0; l < k; ++l) {
        if (e[l] != 0 && row[l] != 0) s += cd * e[l] * row[l];
      }
    }
  }
  return static_cast<int>(mod_floor(s, zmod_));
}

LoopElement CodedLoop::mul(const LoopElement& a, const LoopElement& b) const {
  require(a);
  require(b);
  const std::int64_t z = static_cast<std::int64_t>(a.z) + b.z + theta(a.v.coords(), b.v.coords());
  return {static_cast<int>(mod_floor(z, zmod_)), a.v + b.v};
}

LoopElement CodedLoop::inv(const LoopElement& a) const {
  require(a);
  const FpVector neg = -a.v;
  const std::int64_t z = -static_cast<std::int64_t>(a.z) - theta(a.v.coords(), neg.coords());
  return {static_cast<int>(mod_floor(z, zmod_)), neg};
}

LoopElement CodedLoop::pow(const LoopElement& a, std::int64_t n) const {
  require(a);
  if (n < 0) return pow(inv(a), -n);
  const int max_q = moduli_.empty() ? 1 : *std::max_element(moduli_.begin(), moduli_.end());
  const std::int64_t exponent = static_cast<std::int64_t>(zmod_) * max_q;
  n %= exponent;
  LoopElement r = identity();
  for (std::int64_t i = 0; i < n; ++i) r = mul(a, r);
  return r;
}

LoopElement CodedLoop::commutator(const LoopElement& a, const LoopElement& b) const {
  return mul(inv(mul(b, a)), mul(a, b));
}

LoopElement CodedLoop::associator(const LoopElement& a, const LoopElement& b, const LoopElement& c) const {
  return mul(inv(mul(a, mul(b, c))), mul(mul(a, b), c));
}

std::uint64_t CodedLoop::element_order(const LoopElement& a) const {
  require(a);
  const LoopElement e = identity();
  LoopElement r = a;
  std::uint64_t n = 1;
  while (!(r == e)) {
    r = mul(a, r);
    ++n;
  }
  return n;
}

std::uint64_t CodedLoop::index_of(const LoopElement& a) const {
  require(a);
  return static_cast<std::uint64_t>(a.z) * quotient_order_ + a.v.rank();
}

LoopElement CodedLoop::element_at(std::uint64_t index) const {
  if (index >= order()) throw InvalidArgument("element index out of range");
  return {static_cast<int>(index / quotient_order_), FpVector::from_rank(index % quotient_order_, moduli_)};
}

// ---------------------------------------------------------------------------
// Constructions

CodedLoop kappa_isotope(const CodedLoop& loop, const FpVector& k) {
  if (k.moduli() != loop.moduli()) throw InvalidArgument("kappa must be an element of C");
  CodedLoop out = loop;
  if (out.kappa_.empty()) out.kappa_.assign(loop.dim(), 0);
  for (std::size_t i = 0; i < loop.dim(); ++i) {
    out.kappa_[i] = static_cast<int>(mod_floor(out.kappa_[i] + k[i], loop.moduli()[i]));
  }
  if (std::all_of(out.kappa_.begin(), out.kappa_.end(), [](int c) { return c == 0; })) out.kappa_.clear();
  out.enable_cache(out.cache_ ? out.quotient_order_ : 0);
  return out;
}

CodedLoop semidirect_central_product(const CodedLoop& d, const CodedLoop& e, const Cvs& ambient,
                                     const std::vector<FpVector>& embed_d, const std::vector<FpVector>& embed_e) {
  if (embed_d.size() != d.dim() || embed_e.size() != e.dim()) {
    throw InvalidArgument("semidirect_central_product: embeddings do not match the factor dimensions");
  }
  std::vector<FpVector> basis = embed_d;
  basis.insert(basis.end(), embed_e.begin(), embed_e.end());
  if (span_dimension(basis, ambient.p()) != basis.size()) {
    throw InvalidArgument("semidirect_central_product: D and E are not linearly independent");
  }
  Cvs combined = restrict_to(ambient, basis);
  if (!(restrict_to(ambient, embed_d) == d.cvs()) || !(restrict_to(ambient, embed_e) == e.cvs())) {
    throw InvalidArgument("semidirect_central_product: restricted forms differ from the factors' CVSs");
  }
  if (d.zmod() != ambient.p() || e.zmod() != ambient.p()) {
    throw InvalidArgument("semidirect_central_product: factors must have central subgroup of order p");
  }
  CodedLoop out;
  out.zmod_ = ambient.p();
  out.moduli_.assign(basis.size(), ambient.p());
  out.quotient_order_ = d.quotient_order() * e.quotient_order();
  const ExtensionSpec spec = extension_spec(combined);
  out.alpha_ = spec.alpha;
  out.cvs_ = combined;
  out.cocycle_ = std::make_shared<detail::SdcpCocycle>(d, e, combined);
  out.enable_cache(BuildOptions{}.theta_cache_elements);
  return out;
}

LoopTable to_table(const CodedLoop& loop, std::size_t max_order) {
  const std::uint64_t n = loop.order();
  if (n > max_order || n > LoopTable::kMaxOrder) {
    throw BudgetExceeded("to_table: loop order " + std::to_string(n) + " exceeds the table budget " +
                         std::to_string(std::min<std::size_t>(max_order, LoopTable::kMaxOrder)));
  }
  const std::uint64_t q = loop.quotient_order();
  std::vector<FpVector> vecs;
  vecs.reserve(q);
  for (std::uint64_t r = 0; r < q; ++r) vecs.push_back(FpVector::from_rank(r, loop.moduli()));
  std::vector<std::uint16_t> t(n * n);
  const std::uint64_t zmod = static_cast<std::uint64_t>(loop.zmod());
  for (std::uint64_t u = 0; u < q; ++u) {
    for (std::uint64_t w = 0; w < q; ++w) {
      const std::uint64_t th = static_cast<std::uint64_t>(loop.theta(vecs[u].coords(), vecs[w].coords()));
      const std::uint64_t sum = (vecs[u] + vecs[w]).rank();
      for (std::uint64_t za = 0; za < zmod; ++za) {
        for (std::uint64_t zb = 0; zb < zmod; ++zb) {
          const std::uint64_t z = (za + zb + th) % zmod;
          t[(za * q + u) * n + zb * q + w] = static_cast<std::uint16_t>(z * q + sum);
        }
      }
    }
  }
  LoopTable table(static_cast<std::size_t>(n), std::move(t));
  table.set_labels(loop.zmod(), loop.dim());
  return table;
}

// ---------------------------------------------------------------------------
// Error terms

int sdcp_error(const Cvs& cvs, const FpVector& d1, const FpVector& e1, const FpVector& d2, const FpVector& e2) {
  const std::int64_t z = static_cast<std::int64_t>(cvs.eval_chi(e1, d2)) + cvs.eval_alpha(d1, e1 - d2, e2) +
                         2 * static_cast<std::int64_t>(cvs.eval_alpha(d1, e1, d2)) -
                         2 * static_cast<std::int64_t>(cvs.eval_alpha(e1, d2, e2));
  return static_cast<int>(mod_floor(z, cvs.p()));
}

int sdcp_error_p2(const Cvs& cvs, const FpVector& d1, const FpVector& e1, const FpVector& d2, const FpVector& e2) {
  const std::int64_t z = static_cast<std::int64_t>(cvs.eval_chi(e1, d2)) + cvs.eval_alpha(d1, e1 + d2, e2);
  return static_cast<int>(mod_floor(z, cvs.p()));
}

int sdcp_error_p3(const Cvs& cvs, const FpVector& d1, const FpVector& e1, const FpVector& d2, const FpVector& e2) {
  const std::int64_t z = static_cast<std::int64_t>(cvs.eval_chi(e1, d2)) + cvs.eval_alpha(d1, e1 - d2, e2) -
                         cvs.eval_alpha(d1, e1, d2) + cvs.eval_alpha(e1, d2, e2);
  return static_cast<int>(mod_floor(z, cvs.p()));
}

int sdcp_error_large_p(const Cvs& cvs, const FpVector&, const FpVector& e1, const FpVector& d2, const FpVector&) {
  return cvs.eval_chi(e1, d2);
}

// ---------------------------------------------------------------------------
// Verification

bool ExtensionReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const ExtensionCheck& c) { return c.passed; });
}

bool ExtensionReport::exhaustive() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const ExtensionCheck& c) { return c.exhaustive; });
}

const ExtensionCheck* ExtensionReport::first_failure() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}


ExtensionReport verify_coded_extension(const CodedLoop& loop, const Cvs& cvs, const ExtensionCheckOptions& options) {
  if (loop.zmod() != cvs.p() || loop.moduli() != std::vector<int>(cvs.dim(), cvs.p())) {
    throw InvalidArgument("verify_coded_extension: loop and CVS have different shapes");
  }
  using Tup = std::array<LoopElement, 3>;
  ExtensionReport r;
  r.checks.push_back(detail::run_check("power", loop, 1, options, [&](const Tup& t) {
    return loop.pow(t[0], cvs.p()) == loop.central(cvs.eval_sigma(t[0].v));
  }));
  r.checks.push_back(detail::run_check("commute", loop, 2, options, [&](const Tup& t) {
    return loop.commutator(t[0], t[1]) == loop.central(cvs.eval_chi(t[0].v, t[1].v));
  }));
  r.checks.push_back(detail::run_check("associate", loop, 3, options, [&](const Tup& t) {
    return loop.associator(t[0], t[1], t[2]) == loop.central(cvs.eval_alpha(t[0].v, t[1].v, t[2].v));
  }));
  return r;
}

ExtensionReport verify_coded_extension(const CodedLoop& loop, const ExtensionCheckOptions& options) {
  return verify_coded_extension(loop, loop.cvs(), options);
}

MoufangSample moufang_sampled(const CodedLoop& loop, std::uint64_t triples, std::uint64_t seed) {
  MoufangSample out;
  std::seed_seq seq{seed, std::uint64_t{0x6d6f7566}};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::uint64_t> pick(0, loop.order() - 1);
  auto m = [&](const LoopElement& a, const LoopElement& b) { return loop.mul(a, b); };
  for (std::uint64_t s = 0; s < triples; ++s) {
    const LoopElement x = loop.element_at(pick(rng));
    const LoopElement y = loop.element_at(pick(rng));
    const LoopElement z = loop.element_at(pick(rng));
    ++out.triples;
    const char* failed = nullptr;
    if (!(m(m(m(y, x), z), x) == m(y, m(x, m(z, x))))) {
      failed = "((yx)z)x = y(x(zx))";
    } else if (!(m(m(m(x, y), x), z) == m(x, m(y, m(x, z))))) {
      failed = "((xy)x)z = x(y(xz))";
    } else if (!(m(m(x, m(y, z)), x) == m(m(x, y), m(z, x)))) {
      failed = "(x(yz))x = (xy)(zx)";
    } else if (!(m(m(x, y), m(z, x)) == m(x, m(m(y, z), x)))) {
      failed = "(xy)(zx) = x((yz)x)";
    }
    if (failed) {
      out.passed = false;
      out.identity = failed;
      out.witness = {x, y, z};
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

// z-part of x_1^v1 (x_2^v2 (... x_k^vk)) in stored coordinates.
int right_nested_offset(const CodedLoop& loop, const FpVector& v) {
  const std::size_t k = loop.dim();
  LoopElement r = loop.identity();
  for (std::size_t i = k; i-- > 0;) {
    std::vector<int> c(k, 0);
    c[i] = v[i];
    r = loop.mul({0, FpVector(std::move(c), loop.moduli())}, r);
  }
  return r.z;
}

}  // namespace

NormalForm normal_form(const CodedLoop& loop, const LoopElement& a) {
  const int b = right_nested_offset(loop, a.v);
  return {static_cast<int>(mod_floor(static_cast<std::int64_t>(a.z) - b, loop.zmod())), a.v.coords()};
}

LoopElement from_normal_form(const CodedLoop& loop, const NormalForm& nf) {
  const FpVector v(nf.exponents, loop.moduli());
  return loop.element(static_cast<std::int64_t>(nf.z) + right_nested_offset(loop, v), v);
}

}  // namespace codedloops
