#include "codedloops/cvs.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "codedloops/error.hpp"

namespace codedloops {

CvsData::CvsData(int p_in, std::size_t k_in)
    : p(p_in), k(k_in), sigma(k_in, 0), chi(k_in * k_in, 0), alpha(k_in * k_in * k_in, 0) {}

// ---------------------------------------------------------------------------
// Cvs

Cvs::Cvs(CvsData data) : p_(data.p), k_(data.k) {
  if (!is_prime(p_)) throw InvalidArgument("CVS prime p = " + std::to_string(p_) + " is not prime");
  if (data.sigma.size() != k_ || data.chi.size() != k_ * k_ || data.alpha.size() != k_ * k_ * k_) {
    throw InvalidArgument("CVS basis tables do not match dimension " + std::to_string(k_));
  }
  auto check_value = [&](int v, const std::string& where) {
    if (v < 0 || v >= p_) {
      throw InvalidArgument(where + " = " + std::to_string(v) + " is outside [0, " + std::to_string(p_) + ")");
    }
  };

  sigma_ = data.sigma;
  for (std::size_t i = 0; i < k_; ++i) check_value(sigma_[i], "sigma_" + std::to_string(i + 1));

  chi_.assign(k_ * k_, 0);
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = i + 1; j < k_; ++j) {
      const int v = data.chi_at(i, j);
      check_value(v, "chi_" + std::to_string(i + 1) + std::to_string(j + 1));
      chi_[i * k_ + j] = v;
      chi_[j * k_ + i] = static_cast<int>(mod_floor(-v, p_));
    }
  }

  alpha_.assign(k_ * k_ * k_, 0);
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = i + 1; j < k_; ++j) {
      for (std::size_t l = j + 1; l < k_; ++l) {
        const int v = data.alpha_at(i, j, l);
        const std::string name = "alpha_" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                 std::to_string(l + 1);
        check_value(v, name);
        if (v != 0 && p_ > 3) {
          throw InvalidArgument(name + " is nonzero but alpha vanishes identically for p > 3");
        }
        const int neg = static_cast<int>(mod_floor(-v, p_));
        auto at = [&](std::size_t a, std::size_t b, std::size_t c) -> int& { return alpha_[(a * k_ + b) * k_ + c]; };
        at(i, j, l) = v;
        at(j, l, i) = v;
        at(l, i, j) = v;
        at(j, i, l) = neg;
        at(i, l, j) = neg;
        at(l, j, i) = neg;
      }
    }
  }
}

CvsData Cvs::data() const {
  CvsData d(p_, k_);
  d.sigma = sigma_;
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = i + 1; j < k_; ++j) {
      d.chi_at(i, j) = chi_basis(i, j);
      for (std::size_t l = j + 1; l < k_; ++l) d.alpha_at(i, j, l) = alpha_basis(i, j, l);
    }
  }
  return d;
}

void Cvs::require_vector(const FpVector& v) const {
  if (v.size() != k_) {
    throw InvalidArgument("vector " + v.to_string() + " has dimension " + std::to_string(v.size()) +
                          ", CVS has dimension " + std::to_string(k_));
  }
  for (int m : v.moduli()) {
    if (m != p_) throw InvalidArgument("vector " + v.to_string() + " is not over F_" + std::to_string(p_));
  }
}

int Cvs::eval_sigma(const FpVector& c) const {
  require_vector(c);
  return sigma_raw(c.coords());
}

int Cvs::eval_chi(const FpVector& c, const FpVector& d) const {
  require_vector(c);
  require_vector(d);
  return chi_raw(c.coords(), d.coords());
}

int Cvs::eval_alpha(const FpVector& c, const FpVector& d, const FpVector& e) const {
  require_vector(c);
  require_vector(d);
  require_vector(e);
  return alpha_raw(c.coords(), d.coords(), e.coords());
}

int Cvs::sigma_raw(std::span<const int> c) const noexcept {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < k_; ++i) s += static_cast<std::int64_t>(c[i]) * sigma_[i];
  if (p_ == 2) {
    // sigma(c) = sum c_i sigma_i + sum_{i<j} c_i c_j chi_ij + sum_{i<j<l} c_i c_j c_l alpha_ijl
    for (std::size_t i = 0; i < k_; ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = i + 1; j < k_; ++j) {
        if (c[j] == 0) continue;
        s += chi_[i * k_ + j];
        for (std::size_t l = j + 1; l < k_; ++l) {
          if (c[l] != 0) s += alpha_[(i * k_ + j) * k_ + l];
        }
      }
    }
  }
  return static_cast<int>(mod_floor(s, p_));
}

int Cvs::chi_raw(std::span<const int> c, std::span<const int> d) const noexcept {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < k_; ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < k_; ++j) {
      if (j != i) s += static_cast<std::int64_t>(c[i]) * d[j] * chi_[i * k_ + j];
    }
  }
  if (p_ == 2) {
    // + sum_{i<j} sum_l c_i c_j d_l alpha_ijl + sum_i sum_{j<l} c_i d_j d_l alpha_ijl
    for (std::size_t i = 0; i < k_; ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < k_; ++j) {
        for (std::size_t l = 0; l < k_; ++l) {
          const int a = alpha_[(i * k_ + j) * k_ + l];
          if (a == 0) continue;
          if (i < j && c[j] != 0 && d[l] != 0) s += a;
          if (j < l && d[j] != 0 && d[l] != 0) s += a;
        }
      }
    }
  }
  return static_cast<int>(mod_floor(s, p_));
}

int Cvs::alpha_raw(std::span<const int> c, std::span<const int> d, std::span<const int> e) const noexcept {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < k_; ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < k_; ++j) {
      if (d[j] == 0 || j == i) continue;
      const std::int64_t cd = static_cast<std::int64_t>(c[i]) * d[j];
      const int* row = &alpha_[(i * k_ + j) * k_];
      for (std::size_t l = 0; l < k_; ++l) {
        if (e[l] != 0 && row[l] != 0) s += cd * e[l] * row[l];
      }
    }
  }
  return static_cast<int>(mod_floor(s, p_));
}

bool Cvs::has_trivial_alpha() const noexcept {
  return std::all_of(alpha_.begin(), alpha_.end(), [](int a) { return a == 0; });
}

// ---------------------------------------------------------------------------
// Polarization oracles

namespace {

std::size_t last_nonzero(const FpVector& v) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] != 0) return i;
  }
  return v.size();
}

// chi(x_t, d) = -chi(d, x_t), peeling one unit of d at a time.
int chi_basis_left(const Cvs& cvs, std::size_t t, FpVector d) {
  const int p = cvs.p();
  std::int64_t acc = 0;
  for (std::size_t s = last_nonzero(d); s < d.size(); s = last_nonzero(d)) {
    const FpVector x = cvs.basis_vector(s);
    d = d - x;
    // chi(d' + x_s, x_t) = chi(d', x_t) + chi(x_s, x_t) + 3 alpha(d', x_s, x_t)
    acc -= cvs.chi_basis(s, t) + 3 * cvs.eval_alpha(d, x, cvs.basis_vector(t));
  }
  return static_cast<int>(mod_floor(acc, p));
}

}  // namespace

int chi_by_polarization(const Cvs& cvs, const FpVector& c_in, const FpVector& d) {
  (void)cvs.eval_chi(c_in, d);  // dimension checks
  const int p = cvs.p();
  FpVector c = c_in;
  std::int64_t acc = 0;
  for (std::size_t t = last_nonzero(c); t < c.size(); t = last_nonzero(c)) {
    const FpVector x = cvs.basis_vector(t);
    c = c - x;
    // chi(c' + x_t, d) = chi(c', d) + chi(x_t, d) + 3 alpha(c', x_t, d)
    acc += chi_basis_left(cvs, t, d) + 3 * cvs.eval_alpha(c, x, d);
  }
  return static_cast<int>(mod_floor(acc, p));
}

int sigma_by_polarization(const Cvs& cvs, const FpVector& c_in) {
  (void)cvs.eval_sigma(c_in);
  const int p = cvs.p();
  FpVector c = c_in;
  std::int64_t acc = 0;
  for (std::size_t t = last_nonzero(c); t < c.size(); t = last_nonzero(c)) {
    const FpVector x = cvs.basis_vector(t);
    c = c - x;
    acc += cvs.sigma_basis(t);
    if (p == 2) acc += chi_by_polarization(cvs, c, x);
  }
  return static_cast<int>(mod_floor(acc, p));
}

Cvs restrict_to(const Cvs& cvs, const std::vector<FpVector>& vectors) {
  CvsData d(cvs.p(), vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    d.sigma_at(i) = cvs.eval_sigma(vectors[i]);
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      d.chi_at(i, j) = cvs.eval_chi(vectors[i], vectors[j]);
      for (std::size_t l = j + 1; l < vectors.size(); ++l) {
        d.alpha_at(i, j, l) = cvs.eval_alpha(vectors[i], vectors[j], vectors[l]);
      }
    }
  }
  return Cvs(std::move(d));
}

Cvs scale_cvs(const Cvs& cvs, int scalar) {
  CvsData d = cvs.data();
  const int p = cvs.p();
  auto scale = [&](int& v) { v = static_cast<int>(mod_floor(static_cast<std::int64_t>(v) * scalar, p)); };
  std::for_each(d.sigma.begin(), d.sigma.end(), scale);
  std::for_each(d.chi.begin(), d.chi.end(), scale);
  std::for_each(d.alpha.begin(), d.alpha.end(), scale);
  return Cvs(std::move(d));
}

// ---------------------------------------------------------------------------
// Validation

FormOracle oracle_of(const Cvs& cvs) {
  FormOracle o;
  o.p = cvs.p();
  o.k = cvs.dim();
  o.sigma = [&cvs](const FpVector& c) { return cvs.eval_sigma(c); };
  o.chi = [&cvs](const FpVector& c, const FpVector& d) { return cvs.eval_chi(c, d); };
  o.alpha = [&cvs](const FpVector& c, const FpVector& d, const FpVector& e) { return cvs.eval_alpha(c, d, e); };
  return o;
}

bool AxiomReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

bool AxiomReport::exhaustive() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.exhaustive; });
}

const IdentityCheck* AxiomReport::first_failure() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

namespace {

// Indexes the vectors of F_p^k by rank and memoizes form values.
class FormTables {
 public:
  FormTables(const FormOracle& forms) : forms_(forms), n_(0) {
    auto n = checked_pow(static_cast<std::uint64_t>(forms.p), static_cast<unsigned>(forms.k), std::uint64_t{1} << 40);
    if (!n) throw BudgetExceeded("validate_forms: p^k is too large");
    n_ = *n;
    moduli_.assign(forms.k, forms.p);
    if (n_ <= kVectorCache) {
      for (std::uint64_t r = 0; r < n_; ++r) vectors_.push_back(FpVector::from_rank(r, moduli_));
    }
    if (n_ <= kTableLimit) sigma_.assign(n_, -1);
    if (n_ * n_ <= kTableLimit) chi_.assign(n_ * n_, -1);
    if (n_ <= 2048 && n_ * n_ * n_ <= kTableLimit) alpha_.assign(n_ * n_ * n_, -1);
    if (n_ * n_ <= kTableLimit) add_.assign(n_ * n_, -1);
    if (n_ * static_cast<std::uint64_t>(forms.p + 1) <= kTableLimit) scale_.assign(n_ * (forms.p + 1), -1);
  }

  std::uint64_t size() const { return n_; }

  FpVector vec(std::uint64_t r) const {
    return r < vectors_.size() ? vectors_[r] : FpVector::from_rank(r, moduli_);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    if (add_.empty()) return (vec(a) + vec(b)).rank();
    auto& slot = add_[a * n_ + b];
    if (slot < 0) slot = static_cast<std::int32_t>((vec(a) + vec(b)).rank());
    return static_cast<std::uint64_t>(slot);
  }
  // n in [0, p]
  std::uint64_t scale(std::uint64_t a, int n) {
    if (scale_.empty()) return vec(a).scaled(n).rank();
    auto& slot = scale_[a * (forms_.p + 1) + n];
    if (slot < 0) slot = static_cast<std::int32_t>(vec(a).scaled(n).rank());
    return static_cast<std::uint64_t>(slot);
  }

  int sigma(std::uint64_t a) {
    if (!sigma_.empty()) {
      auto& slot = sigma_[a];
      if (slot < 0) slot = static_cast<std::int16_t>(reduce(forms_.sigma(vec(a))));
      return slot;
    }
    return reduce(forms_.sigma(vec(a)));
  }
  int chi(std::uint64_t a, std::uint64_t b) {
    if (!chi_.empty()) {
      auto& slot = chi_[a * n_ + b];
      if (slot < 0) slot = static_cast<std::int16_t>(reduce(forms_.chi(vec(a), vec(b))));
      return slot;
    }
    return reduce(forms_.chi(vec(a), vec(b)));
  }
  int alpha(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    if (!alpha_.empty()) {
      auto& slot = alpha_[(a * n_ + b) * n_ + c];
      if (slot < 0) slot = static_cast<std::int16_t>(reduce(forms_.alpha(vec(a), vec(b), vec(c))));
      return slot;
    }
    return reduce(forms_.alpha(vec(a), vec(b), vec(c)));
  }
  int reduce(std::int64_t v) const { return static_cast<int>(mod_floor(v, forms_.p)); }

 private:
  static constexpr std::uint64_t kVectorCache = std::uint64_t{1} << 16;
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;

  const FormOracle& forms_;
  std::uint64_t n_;
  std::vector<int> moduli_;
  std::vector<FpVector> vectors_;
  std::vector<std::int16_t> sigma_;
  std::vector<std::int16_t> chi_;
  std::vector<std::int16_t> alpha_;
  std::vector<std::int32_t> add_;
  std::vector<std::int32_t> scale_;
};

// Runs `holds(tuple, n)` over all (or sampled) tuples of `arity` vector ranks
// and, when `with_n`, every integer n in [0, p].
template <class Pred>
IdentityCheck run_identity(const std::string& name, FormTables& t, int arity, bool with_n, int p,
                           const ValidationOptions& opt, Pred holds) {
  IdentityCheck check;
  check.name = name;
  const std::uint64_t n = t.size();
  auto total = checked_pow(n, static_cast<unsigned>(arity), opt.tuple_limit);
  check.exhaustive = total.has_value();
  std::array<std::uint64_t, 4> tuple{};
  const int n_max = with_n ? p : 0;

  auto test = [&](void) -> bool {
    for (int m = 0; m <= n_max; ++m) {
      ++check.tuples;
      if (!holds(tuple, m)) {
        check.passed = false;
        for (int i = 0; i < arity; ++i) check.witness.push_back(t.vec(tuple[i]));
        if (with_n) check.witness_n = m;
        return false;
      }
    }
    return true;
  };

  if (check.exhaustive) {
    for (std::uint64_t idx = 0; idx < *total; ++idx) {
      if (!test()) break;
      for (int i = arity; i-- > 0;) {
        if (++tuple[i] < n) break;
        tuple[i] = 0;
      }
    }
  } else {
    std::seed_seq seq{opt.seed, static_cast<std::uint64_t>(std::hash<std::string>{}(name))};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    for (std::uint64_t s = 0; s < opt.tuple_limit; ++s) {
      for (int i = 0; i < arity; ++i) tuple[i] = pick(rng);
      if (!test()) break;
    }
  }
  return check;
}

}  // namespace

AxiomReport validate_forms(const FormOracle& forms, const ValidationOptions& options) {
  if (!is_prime(forms.p)) throw InvalidArgument("validate_forms: p must be prime");
  FormTables t(forms);
  const int p = forms.p;
  auto eq = [&](std::int64_t a, std::int64_t b) { return mod_floor(a - b, p) == 0; };
  AxiomReport r;

  using Tup = std::array<std::uint64_t, 4>;
  r.checks.push_back(run_identity("sigmapowerlin", t, 1, true, p, options, [&](const Tup& v, int m) {
    return eq(t.sigma(t.scale(v[0], m)), std::int64_t{m} * t.sigma(v[0]));
  }));
  r.checks.push_back(run_identity("sigmalin", t, 2, false, p, options, [&](const Tup& v, int) {
    const std::int64_t polar = p == 2 ? t.chi(v[0], v[1]) : 0;
    return eq(t.sigma(t.add(v[0], v[1])), t.sigma(v[0]) + t.sigma(v[1]) + polar);
  }));
  r.checks.push_back(run_identity("chisymp", t, 1, false, p, options,
                                  [&](const Tup& v, int) { return t.chi(v[0], v[0]) == 0; }));
  r.checks.push_back(run_identity("chiskew", t, 2, false, p, options, [&](const Tup& v, int) {
    return eq(t.chi(v[0], v[1]), -std::int64_t{t.chi(v[1], v[0])});
  }));
  r.checks.push_back(run_identity("chipowerlin", t, 2, true, p, options, [&](const Tup& v, int m) {
    return eq(t.chi(t.scale(v[0], m), v[1]), std::int64_t{m} * t.chi(v[0], v[1]));
  }));
  r.checks.push_back(run_identity("chimultilin", t, 3, false, p, options, [&](const Tup& v, int) {
    return eq(t.chi(t.add(v[0], v[1]), v[2]),
              t.chi(v[0], v[2]) + t.chi(v[1], v[2]) + 3 * std::int64_t{t.alpha(v[0], v[1], v[2])});
  }));
  r.checks.push_back(run_identity("alphasymp", t, 2, false, p, options, [&](const Tup& v, int) {
    return t.alpha(v[0], v[1], v[1]) == 0 && t.alpha(v[1], v[0], v[1]) == 0 && t.alpha(v[1], v[1], v[0]) == 0;
  }));
  r.checks.push_back(run_identity("alphaskew", t, 3, false, p, options, [&](const Tup& v, int) {
    const int a = t.alpha(v[0], v[1], v[2]);
    return eq(a, -std::int64_t{t.alpha(v[1], v[0], v[2])}) && eq(a, t.alpha(v[1], v[2], v[0]));
  }));
  r.checks.push_back(run_identity("alphapowerlin", t, 3, true, p, options, [&](const Tup& v, int m) {
    return eq(t.alpha(t.scale(v[0], m), v[1], v[2]), std::int64_t{m} * t.alpha(v[0], v[1], v[2]));
  }));
  r.checks.push_back(run_identity("alphamultilin", t, 4, false, p, options, [&](const Tup& v, int) {
    return eq(t.alpha(t.add(v[0], v[1]), v[2], v[3]), t.alpha(v[0], v[2], v[3]) + t.alpha(v[1], v[2], v[3]));
  }));
  return r;
}

AxiomReport validate_axioms(const Cvs& cvs, const ValidationOptions& options) {
  return validate_forms(oracle_of(cvs), options);
}

// ---------------------------------------------------------------------------
// Radicals and translates

namespace {

std::vector<FpVector> enumerate_for_radical(const Cvs& cvs, const RadicalOptions& options) {
  auto n = checked_pow(static_cast<std::uint64_t>(cvs.p()), static_cast<unsigned>(cvs.dim()), options.max_elements);
  if (!n) {
    throw BudgetExceeded("radical computation needs |C| <= " + std::to_string(options.max_elements));
  }
  return all_vectors(cvs.dim(), cvs.p());
}

}  // namespace

std::vector<FpVector> rad_chi(const Cvs& cvs, RadicalOptions options) {
  const auto all = enumerate_for_radical(cvs, options);
  std::vector<FpVector> members;
  for (const auto& c : all) {
    const bool in = std::all_of(all.begin(), all.end(),
                                [&](const FpVector& d) { return cvs.chi_raw(c.coords(), d.coords()) == 0; });
    if (in) members.push_back(c);
  }
  return span_basis(members, cvs.p());
}

std::vector<FpVector> rad_alpha(const Cvs& cvs, RadicalOptions options) {
  const auto all = enumerate_for_radical(cvs, options);
  std::vector<FpVector> members;
  for (const auto& c : all) {
    bool in = true;
    for (std::size_t a = 0; a < all.size() && in; ++a) {
      for (std::size_t b = 0; b < all.size() && in; ++b) {
        in = cvs.alpha_raw(c.coords(), all[a].coords(), all[b].coords()) == 0;
      }
    }
    if (in) members.push_back(c);
  }
  return span_basis(members, cvs.p());
}

Cvs adjoint_translate(const Cvs& cvs, const FpVector& k) {
  CvsData d = cvs.data();
  const std::size_t dim = cvs.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      const int shift = cvs.eval_alpha(cvs.basis_vector(i), k, cvs.basis_vector(j));
      d.chi_at(i, j) = static_cast<int>(mod_floor(d.chi_at(i, j) + shift, cvs.p()));
    }
  }
  return Cvs(std::move(d));
}

// ---------------------------------------------------------------------------
// Isomorphism up to scalar

namespace {

// Per-vector invariants that do not depend on the scalar: whether sigma(v) = 0,
// #{d : chi(v, d) = 0} and #{d : alpha(v, d, .) = 0}, packed into one word.
std::vector<std::uint64_t> vector_profiles(const Cvs& cvs, const std::vector<FpVector>& vectors) {
  const std::size_t k = cvs.dim();
  std::vector<std::uint64_t> out;
  out.reserve(vectors.size());
  std::vector<std::vector<int>> basis;
  for (std::size_t i = 0; i < k; ++i) basis.push_back(cvs.basis_vector(i).coords());
  for (const auto& v : vectors) {
    std::uint64_t chi_zero = 0, alpha_zero = 0;
    for (const auto& d : vectors) {
      chi_zero += cvs.chi_raw(v.coords(), d.coords()) == 0;
      bool zero = true;
      for (std::size_t j = 0; j < k && zero; ++j) zero = cvs.alpha_raw(v.coords(), d.coords(), basis[j]) == 0;
      alpha_zero += zero;
    }
    out.push_back((static_cast<std::uint64_t>(cvs.sigma_raw(v.coords()) == 0) << 62) | (chi_zero << 31) | alpha_zero);
  }
  return out;
}

class IsoSearch {
 public:
  IsoSearch(const Cvs& a, const Cvs& b, int scalar, const std::vector<FpVector>& vectors,
            const std::vector<std::uint64_t>& profile_a, const std::vector<std::uint64_t>& profile_b)
      : a_(a), b_(b), scalar_(scalar), k_(a.dim()), p_(a.p()), vectors_(vectors), profile_a_(profile_a),
        profile_b_(profile_b) {
    n_ = vectors_.size();
    for (std::size_t i = 0; i < k_; ++i) basis_rank_.push_back(a.basis_vector(i).rank());
    // Rank tables for growing spans: rank(v_s + t v_c) = add_[s, scale_[c, t]].
    scale_.resize(n_ * p_);
    for (std::size_t c = 0; c < n_; ++c)
      for (int t = 0; t < p_; ++t) scale_[c * p_ + t] = vectors_[c].scaled(t).rank();
    add_.resize(n_ * n_);
    for (std::size_t s = 0; s < n_; ++s)
      for (std::size_t t = 0; t < n_; ++t) add_[s * n_ + t] = (vectors_[s] + vectors_[t]).rank();
  }

  std::optional<std::vector<std::size_t>> run() {
    images_.clear();
    // search() holds a reference to span_.back() across push_back.
    span_.reserve(k_ + 1);
    span_.assign(1, std::vector<char>(n_, 0));
    span_[0][0] = 1;  // rank 0 is the zero vector
    if (search(0)) return images_;
    return std::nullopt;
  }

 private:
  int scaled(int v) const { return static_cast<int>(mod_floor(static_cast<std::int64_t>(v) * scalar_, p_)); }

  bool search(std::size_t i) {
    if (i == k_) return true;
    const auto& span = span_.back();
    for (std::size_t cand = 1; cand < n_; ++cand) {
      if (span[cand] || profile_b_[cand] != profile_a_[basis_rank_[i]]) continue;
      const auto& v = vectors_[cand].coords();
      if (b_.sigma_raw(v) != scaled(a_.sigma_basis(i))) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        ok = b_.chi_raw(vectors_[images_[j]].coords(), v) == scaled(a_.chi_basis(j, i));
      }
      for (std::size_t j = 0; j < i && ok; ++j) {
        for (std::size_t l = j + 1; l < i && ok; ++l) {
          ok = b_.alpha_raw(vectors_[images_[j]].coords(), vectors_[images_[l]].coords(), v) ==
               scaled(a_.alpha_basis(j, l, i));
        }
      }
      if (!ok) continue;

      images_.push_back(cand);
      std::vector<char> next(n_, 0);
      for (std::size_t s = 0; s < n_; ++s) {
        if (!span[s]) continue;
        for (int t = 0; t < p_; ++t) next[add_[s * n_ + scale_[cand * p_ + t]]] = 1;
      }
      span_.push_back(std::move(next));
      if (search(i + 1)) return true;
      span_.pop_back();
      images_.pop_back();
    }
    return false;
  }

  const Cvs& a_;
  const Cvs& b_;
  int scalar_;
  std::size_t k_;
  int p_;
  const std::vector<FpVector>& vectors_;
  const std::vector<std::uint64_t>& profile_a_;
  const std::vector<std::uint64_t>& profile_b_;
  std::vector<std::size_t> basis_rank_;
  std::size_t n_ = 0;
  std::vector<std::size_t> images_;
  std::vector<std::vector<char>> span_;
  std::vector<std::size_t> scale_;
  std::vector<std::size_t> add_;
};

}  // namespace

std::optional<CvsIso> iso_up_to_scalar(const Cvs& a, const Cvs& b, IsoSearchOptions options) {
  if (a.p() != b.p() || a.dim() != b.dim()) {
    throw InvalidArgument("iso_up_to_scalar: CVSs differ in prime or dimension");
  }
  const std::size_t k = a.dim();
  const int p = a.p();
  if (!checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k * k), options.max_matrices)) {
    throw BudgetExceeded("iso_up_to_scalar: p^(k^2) exceeds the search budget");
  }
  if (k == 0) return CvsIso{FpMatrix(0, p), 1};
  const auto vectors = all_vectors(k, p);
  const auto profile_a = vector_profiles(a, vectors);
  const auto profile_b = vector_profiles(b, vectors);
  {
    auto sa = profile_a, sb = profile_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  for (int scalar = 1; scalar < p; ++scalar) {
    IsoSearch search(a, b, scalar, vectors, profile_a, profile_b);
    if (auto images = search.run()) {
      std::vector<FpVector> cols;
      for (std::size_t r : *images) cols.push_back(FpVector::from_rank(r, std::vector<int>(k, p)));
      return CvsIso{FpMatrix::from_columns(cols), scalar};
    }
  }
  return std::nullopt;
}

Cvs random_cvs(int p, std::size_t k, std::uint64_t seed) {
  if (!is_prime(p)) throw InvalidArgument("random_cvs: p must be prime");
  std::seed_seq seq{seed, static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(k)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> value(0, p - 1);
  CvsData d(p, k);
  for (std::size_t i = 0; i < k; ++i) d.sigma_at(i) = value(rng);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) d.chi_at(i, j) = value(rng);
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::size_t l = j + 1; l < k; ++l) d.alpha_at(i, j, l) = p <= 3 ? value(rng) : 0;
    }
  }
  return Cvs(std::move(d));
}

Cvs octonion_cvs() {
  CvsData d(2, 3);
  d.sigma = {1, 1, 1};
  d.chi_at(0, 1) = d.chi_at(0, 2) = d.chi_at(1, 2) = 1;
  d.alpha_at(0, 1, 2) = 1;
  return Cvs(std::move(d));
}

}  // namespace codedloops
