#include "codedloops/coded_module.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "codedloops/error.hpp"
#include "extension_check.hpp"
#include "text_util.hpp"

namespace codedloops {

namespace {

bool is_power_of(std::int64_t n, int p) {
  if (n < p) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

// Additive order of v in Z/m.
std::int64_t additive_order(std::int64_t v, std::int64_t m) { return m / std::gcd(mod_floor(v, m), m); }

std::string idx(std::initializer_list<std::size_t> is) {
  std::string s;
  for (auto i : is) s += (s.empty() ? "" : ",") + std::to_string(i + 1);
  return s;
}

}  // namespace

CodedModuleData::CodedModuleData(int p_, std::vector<int> orders_, int zorder_)
    : p(p_), orders(std::move(orders_)), zorder(zorder_) {
  const std::size_t k = orders.size();
  z_values.assign(k, 0);
  chi.assign(k * k, 0);
  alpha.assign(k * k * k, 0);
}

CodedModule::CodedModule(CodedModuleData d) : p_(d.p), orders_(d.orders), zorder_(d.zorder) {
  const std::size_t k = d.orders.size();
  if (!is_prime(p_)) throw InvalidArgument("coded module: p = " + std::to_string(p_) + " is not a prime");
  for (std::size_t i = 0; i < k; ++i) {
    if (!is_power_of(orders_[i], p_)) {
      throw InvalidArgument("coded module: order of x_" + std::to_string(i + 1) + " is not a power of p");
    }
  }
  if (!is_power_of(zorder_, p_)) throw InvalidArgument("coded module: |Z| is not a power of p");
  if (zorder_ >= 0xFFFF) throw InvalidArgument("coded module: |Z| too large");
  if (d.z_values.size() != k || d.chi.size() != k * k || d.alpha.size() != k * k * k) {
    throw InvalidArgument("coded module: table sizes do not match the number of basis elements");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (d.z_values[i] < 0 || d.z_values[i] >= zorder_) {
      throw InvalidArgument("coded module: z_" + std::to_string(i + 1) + " outside [0, |Z|)");
    }
    if (order_ > (std::uint64_t{1} << 40) / static_cast<std::uint64_t>(orders_[i])) {
      throw BudgetExceeded("coded module: |C| too large");
    }
    order_ *= static_cast<std::uint64_t>(orders_[i]);
  }
  z_ = d.z_values;

  chi_.assign(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const int v = d.chi[i * k + j];
      if (v < 0 || v >= zorder_) throw InvalidArgument("coded module: chi(" + idx({i, j}) + ") outside [0, |Z|)");
      const std::int64_t ord = additive_order(v, zorder_);
      if (orders_[i] % ord != 0 || orders_[j] % ord != 0) {
        throw InvalidArgument("coded module: chi order condition violated, the order " + std::to_string(ord) +
                              " of chi(" + idx({i, j}) + ") does not divide the orders of x_" +
                              std::to_string(i + 1) + " and x_" + std::to_string(j + 1));
      }
      chi_[i * k + j] = v;
      chi_[j * k + i] = static_cast<int>(mod_floor(-v, zorder_));
    }
  }

  alpha_.assign(k * k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::size_t l = j + 1; l < k; ++l) {
        const int v = d.alpha[(i * k + j) * k + l];
        if (v == 0) continue;
        const std::string where = "alpha(" + idx({i, j, l}) + ")";
        if (v < 0 || v >= zorder_) throw InvalidArgument("coded module: " + where + " outside [0, |Z|)");
        if (p_ > 3) throw InvalidArgument("coded module: alpha must vanish for p > 3, " + where + " is nonzero");
        const std::int64_t ord = additive_order(v, zorder_);
        if (ord != p_) {
          throw InvalidArgument("coded module: alpha exponent condition violated, " + where + " has order " +
                                std::to_string(ord) + " instead of " + std::to_string(p_));
        }
        const std::array<std::size_t, 3> t{i, j, l};
        // even permutations keep the sign
        const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
        for (std::size_t s = 0; s < perms.size(); ++s) {
          const auto& q = perms[s];
          const int val = s < 3 ? v : static_cast<int>(mod_floor(-v, zorder_));
          alpha_[(t[q[0]] * k + t[q[1]]) * k + t[q[2]]] = val;
        }
      }
    }
  }
}

bool CodedModule::elementary() const noexcept {
  return zorder_ == p_ && std::all_of(orders_.begin(), orders_.end(), [&](int q) { return q == p_; });
}

Cvs CodedModule::to_cvs() const {
  if (!elementary()) throw InvalidArgument("coded module is not elementary abelian");
  CvsData d(p_, dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    d.sigma_at(i) = z_[i];
    for (std::size_t j = i + 1; j < dim(); ++j) {
      d.chi_at(i, j) = chi_basis(i, j);
      for (std::size_t l = j + 1; l < dim(); ++l) d.alpha_at(i, j, l) = alpha_basis(i, j, l);
    }
  }
  return Cvs(std::move(d));
}

CodedModule CodedModule::from_cvs(const Cvs& cvs) {
  const std::size_t k = cvs.dim();
  CodedModuleData d(cvs.p(), std::vector<int>(k, cvs.p()), cvs.p());
  for (std::size_t i = 0; i < k; ++i) {
    d.z_values[i] = cvs.sigma_basis(i);
    for (std::size_t j = i + 1; j < k; ++j) {
      d.chi_at(i, j) = cvs.chi_basis(i, j);
      for (std::size_t l = j + 1; l < k; ++l) d.alpha_at(i, j, l) = cvs.alpha_basis(i, j, l);
    }
  }
  return CodedModule(std::move(d));
}

// ---------------------------------------------------------------------------
// Evaluators

namespace {

void require_element(const CodedModule& m, const FpVector& c) {
  if (c.moduli() != m.orders()) throw InvalidArgument("vector is not an element of the module's C");
}

}  // namespace

int eval_chi_module(const CodedModule& m, const FpVector& c, const FpVector& d) {
  require_element(m, c);
  require_element(m, d);
  const std::size_t k = m.dim();
  std::int64_t s = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j) s += static_cast<std::int64_t>(c[i]) * d[j] * m.chi_basis(i, j);
    }
  }
  if (m.p() == 2) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) s += static_cast<std::int64_t>(c[i]) * c[j] * d[l] * m.alpha_basis(i, j, l);
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = j + 1; l < k; ++l) s += static_cast<std::int64_t>(c[i]) * d[j] * d[l] * m.alpha_basis(i, j, l);
      }
    }
  }
  return static_cast<int>(mod_floor(s, m.zorder()));
}

int eval_alpha_module(const CodedModule& m, const FpVector& c, const FpVector& d, const FpVector& e) {
  require_element(m, c);
  require_element(m, d);
  require_element(m, e);
  const std::size_t k = m.dim();
  std::int64_t s = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) s += static_cast<std::int64_t>(c[i]) * d[j] * e[l] * m.alpha_basis(i, j, l);
    }
  }
  return static_cast<int>(mod_floor(s, m.zorder()));
}

int eval_sigma2(const CodedModule& m, const std::vector<int>& sigmas, const FpVector& c) {
  if (m.p() != 2) throw InvalidArgument("eval_sigma2 needs p = 2");
  if (sigmas.size() != m.dim()) throw InvalidArgument("eval_sigma2: one sigma_i per basis element");
  require_element(m, c);
  const std::size_t k = m.dim();
  std::int64_t s = 0;
  for (std::size_t i = 0; i < k; ++i) {
    s += static_cast<std::int64_t>(c[i]) * sigmas[i];
    for (std::size_t j = i + 1; j < k; ++j) {
      s += static_cast<std::int64_t>(c[i]) * c[j] * m.chi_basis(i, j);
      for (std::size_t l = j + 1; l < k; ++l) s += static_cast<std::int64_t>(c[i]) * c[j] * c[l] * m.alpha_basis(i, j, l);
    }
  }
  return static_cast<int>(mod_floor(s, m.zorder()));
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class ModuleTables {
 public:
  explicit ModuleTables(const CodedModule& m) : m_(m), vecs_(all_vectors(m.orders())), n_(vecs_.size()) {
    if (n_ * n_ <= kLimit) {
      sum_.resize(n_ * n_);
      chi_.resize(n_ * n_);
      for (std::uint64_t a = 0; a < n_; ++a) {
        for (std::uint64_t b = 0; b < n_; ++b) {
          sum_[a * n_ + b] = static_cast<std::uint32_t>((vecs_[a] + vecs_[b]).rank());
          chi_[a * n_ + b] = eval_chi_module(m, vecs_[a], vecs_[b]);
        }
      }
    }
  }
  std::uint64_t size() const { return n_; }
  const FpVector& vec(std::uint64_t a) const { return vecs_[a]; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    return sum_.empty() ? (vecs_[a] + vecs_[b]).rank() : sum_[a * n_ + b];
  }
  std::uint64_t scale(std::uint64_t a, std::int64_t t) const { return vecs_[a].scaled(t).rank(); }
  int chi(std::uint64_t a, std::uint64_t b) const {
    return chi_.empty() ? eval_chi_module(m_, vecs_[a], vecs_[b]) : chi_[a * n_ + b];
  }
  int alpha(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    return eval_alpha_module(m_, vecs_[a], vecs_[b], vecs_[c]);
  }

 private:
  static constexpr std::uint64_t kLimit = std::uint64_t{1} << 22;
  const CodedModule& m_;
  std::vector<FpVector> vecs_;
  std::uint64_t n_;
  std::vector<std::uint32_t> sum_;
  std::vector<int> chi_;
};

template <class Pred>
IdentityCheck module_identity(const std::string& name, const ModuleTables& t, int arity, int n_max,
                              const ValidationOptions& opt, Pred holds) {
  IdentityCheck check;
  check.name = name;
  const std::uint64_t n = t.size();
  auto total = checked_pow(n, static_cast<unsigned>(arity), opt.tuple_limit);
  check.exhaustive = total.has_value();
  std::array<std::uint64_t, 4> tuple{};
  auto test = [&]() {
    for (int s = 0; s <= n_max; ++s) {
      ++check.tuples;
      if (!holds(tuple, s)) {
        check.passed = false;
        for (int i = 0; i < arity; ++i) check.witness.push_back(t.vec(tuple[i]));
        if (n_max > 0) check.witness_n = s;
        return false;
      }
    }
    return true;
  };
  if (check.exhaustive) {
    for (std::uint64_t i = 0; i < *total; ++i) {
      if (!test()) break;
      for (int j = arity; j-- > 0;) {
        if (++tuple[j] < n) break;
        tuple[j] = 0;
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

AxiomReport validate_module(const CodedModule& m, const ValidationOptions& options,
                            const std::optional<std::vector<int>>& sigmas) {
  const ModuleTables t(m);
  const std::int64_t zo = m.zorder();
  auto eq = [&](std::int64_t a, std::int64_t b) { return mod_floor(a - b, zo) == 0; };
  const int qmax = m.dim() == 0 ? 1 : *std::max_element(m.orders().begin(), m.orders().end());
  using Tup = std::array<std::uint64_t, 4>;
  AxiomReport r;
  r.checks.push_back(module_identity("chisymp", t, 1, 0, options, [&](const Tup& v, int) { return t.chi(v[0], v[0]) == 0; }));
  r.checks.push_back(module_identity("chiskew", t, 2, 0, options, [&](const Tup& v, int) {
    return eq(t.chi(v[0], v[1]), -std::int64_t{t.chi(v[1], v[0])});
  }));
  r.checks.push_back(module_identity("chipowerlin", t, 2, qmax, options, [&](const Tup& v, int s) {
    return eq(t.chi(t.scale(v[0], s), v[1]), std::int64_t{s} * t.chi(v[0], v[1]));
  }));
  r.checks.push_back(module_identity("chimultilin", t, 3, 0, options, [&](const Tup& v, int) {
    return eq(t.chi(t.add(v[0], v[1]), v[2]), std::int64_t{t.chi(v[0], v[2])} + t.chi(v[1], v[2]) +
                                                   3 * std::int64_t{t.alpha(v[0], v[1], v[2])});
  }));
  r.checks.push_back(module_identity("alphasymp", t, 2, 0, options, [&](const Tup& v, int) {
    return t.alpha(v[0], v[1], v[1]) == 0 && t.alpha(v[1], v[0], v[1]) == 0 && t.alpha(v[1], v[1], v[0]) == 0;
  }));
  r.checks.push_back(module_identity("alphaskew", t, 3, 0, options, [&](const Tup& v, int) {
    const int a = t.alpha(v[0], v[1], v[2]);
    return eq(a, -std::int64_t{t.alpha(v[1], v[0], v[2])}) && eq(a, t.alpha(v[1], v[2], v[0]));
  }));
  r.checks.push_back(module_identity("alphapowerlin", t, 3, qmax, options, [&](const Tup& v, int s) {
    return eq(t.alpha(t.scale(v[0], s), v[1], v[2]), std::int64_t{s} * t.alpha(v[0], v[1], v[2]));
  }));
  r.checks.push_back(module_identity("alphamultilin", t, 4, 0, options, [&](const Tup& v, int) {
    return eq(t.alpha(t.add(v[0], v[1]), v[2], v[3]), std::int64_t{t.alpha(v[0], v[2], v[3])} + t.alpha(v[1], v[2], v[3]));
  }));
  if (sigmas) {
    if (m.p() != 2 || !std::all_of(m.orders().begin(), m.orders().end(), [](int q) { return q == 2; })) {
      throw InvalidArgument("sigma polarization is checked on elementary abelian 2-groups only");
    }
    r.checks.push_back(module_identity("sigmalin", t, 2, 0, options, [&](const Tup& v, int) {
      return eq(eval_sigma2(m, *sigmas, t.vec(t.add(v[0], v[1]))),
                std::int64_t{eval_sigma2(m, *sigmas, t.vec(v[0]))} + eval_sigma2(m, *sigmas, t.vec(v[1])) +
                    t.chi(v[0], v[1]));
    }));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Extensions

CodedLoop build_module_extension(const CodedModule& m, const ModuleBuildOptions& options) {
  const std::uint64_t n = m.order() * static_cast<std::uint64_t>(m.zorder());
  if (n > options.max_order) {
    throw BudgetExceeded("module extension of order " + std::to_string(n) + " exceeds " +
                         std::to_string(options.max_order));
  }
  ExtensionSpec spec;
  spec.zmod = m.zorder();
  spec.orders = m.orders();
  spec.powers = m.z_values();
  spec.chi = m.chi_table();
  spec.alpha = m.alpha_table();
  spec.quadratic_chi = m.p() == 2;
  BuildOptions b;
  b.validate = false;
  b.theta_cache_elements = options.theta_cache_elements;
  return CodedLoop::from_spec(std::move(spec), std::nullopt, b);
}

ExtensionReport verify_module_extension(const CodedLoop& loop, const CodedModule& m,
                                        const ExtensionCheckOptions& options) {
  if (loop.zmod() != m.zorder() || loop.moduli() != m.orders()) {
    throw InvalidArgument("verify_module_extension: loop and module have different shapes");
  }
  ExtensionReport r;
  ExtensionCheck power;
  power.name = "power";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    ++power.tuples;
    const LoopElement x = loop.generator(i);
    if (!(loop.pow(x, m.orders()[i]) == loop.central(m.z_values()[i]))) {
      power.passed = false;
      power.witness = {x};
      break;
    }
  }
  r.checks.push_back(std::move(power));
  using Tup = std::array<LoopElement, 3>;
  r.checks.push_back(detail::run_check("commute", loop, 2, options, [&](const Tup& t) {
    return loop.commutator(t[0], t[1]) == loop.central(eval_chi_module(m, t[0].v, t[1].v));
  }));
  r.checks.push_back(detail::run_check("associate", loop, 3, options, [&](const Tup& t) {
    return loop.associator(t[0], t[1], t[2]) == loop.central(eval_alpha_module(m, t[0].v, t[1].v, t[2].v));
  }));
  return r;
}

int sigma_q(const CodedLoop& loop, std::int64_t q, const FpVector& c) {
  if (c.moduli() != loop.moduli()) throw InvalidArgument("sigma_q: vector is not an element of C");
  if (!is_prime(loop.zmod())) throw InvalidArgument("sigma_q needs Z of prime order");
  if (q < 1 || !is_power_of(q, loop.zmod())) throw InvalidArgument("sigma_q: q must be a power of p");
  if (!c.scaled(q).is_zero()) throw InvalidArgument("sigma_q: " + c.to_string() + " is not in C_q");
  const LoopElement a = loop.pow(loop.element(0, c), q);
  const LoopElement b = loop.pow(loop.element(1, c), q);
  if (!(a == b)) throw Error("sigma_q: preimages of " + c.to_string() + " have different q-th powers");
  if (!a.v.is_zero()) throw Error("sigma_q: q-th power is not central");
  return a.z;
}

// ---------------------------------------------------------------------------
// Isotopy

bool ModuleIsotopyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const ExtensionCheck& c) { return c.passed; });
}

ModuleIsotopyReport module_isotopy_check(const CodedModule& m, const ModuleIsotopyOptions& options) {
  if (m.p() != 3 || m.zorder() != 3) throw InvalidArgument("module_isotopy_check needs p = 3 and |Z| = 3");
  const CodedLoop loop = build_module_extension(m);
  std::vector<FpVector> kappas;
  if (m.order() <= options.kappa_limit) {
    kappas = all_vectors(m.orders());
  } else {
    std::mt19937_64 rng(options.checks.seed ^ 0x6b61707061ULL);
    std::uniform_int_distribution<std::uint64_t> pick(0, m.order() - 1);
    kappas.push_back(FpVector::zero(m.orders()));
    while (kappas.size() < options.kappa_limit) kappas.push_back(FpVector::from_rank(pick(rng), m.orders()));
  }
  const int qmax = m.dim() == 0 ? 1 : *std::max_element(m.orders().begin(), m.orders().end());
  const std::int64_t expo = static_cast<std::int64_t>(qmax) * m.zorder();

  ModuleIsotopyReport r;
  using Tup = std::array<LoopElement, 3>;
  for (const auto& k : kappas) {
    ++r.kappas;
    const CodedLoop iso = kappa_isotope(loop, k);
    const std::string tag = " kappa=" + k.to_string();
    r.checks.push_back(detail::run_check("powers" + tag, loop, 1, options.checks, [&](const Tup& t) {
      for (std::int64_t n = 0; n <= expo; ++n) {
        if (!(iso.pow(t[0], n) == loop.pow(t[0], n))) return false;
      }
      return true;
    }));
    r.checks.push_back(detail::run_check("commute" + tag, loop, 2, options.checks, [&](const Tup& t) {
      const std::int64_t want = std::int64_t{eval_chi_module(m, t[0].v, t[1].v)} - eval_alpha_module(m, t[0].v, k, t[1].v);
      return iso.commutator(t[0], t[1]) == iso.central(want);
    }));
    r.checks.push_back(detail::run_check("associate" + tag, loop, 3, options.checks, [&](const Tup& t) {
      return iso.associator(t[0], t[1], t[2]) == iso.central(eval_alpha_module(m, t[0].v, t[1].v, t[2].v));
    }));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text format

CodedModule parse_module(std::string_view text) {
  using detail::Line;
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError("empty input, expected 'module' header", 1, 1);
  if (lines[0].tokens[0].text != "module" || lines[0].tokens.size() != 1) {
    throw ParseError("expected 'module' header", lines[0].number, lines[0].tokens[0].column);
  }
  std::optional<int> p, zorder;
  std::optional<std::vector<int>> orders;
  CodedModuleData data;
  bool ready = false;
  std::set<std::vector<std::int64_t>> seen;

  auto positive = [&](const Line& line, std::size_t t) {
    const std::int64_t v = detail::parse_int(line.tokens[t], line.number);
    if (v < 1 || v > 1 << 20) throw ParseError("expected a positive integer", line.number, line.tokens[t].column);
    return static_cast<int>(v);
  };
  auto start = [&](const Line& line) {
    if (!p || !orders || !zorder) {
      throw ParseError("'p', 'orders' and 'zorder' must precede entries", line.number, line.tokens[0].column);
    }
    if (!ready) {
      data = CodedModuleData(*p, *orders, *zorder);
      ready = true;
    }
  };
  auto index = [&](const Line& line, std::size_t t) {
    const std::int64_t v = detail::parse_int(line.tokens[t], line.number);
    if (v < 1 || static_cast<std::size_t>(v) > orders->size()) {
      throw ParseError("index " + std::to_string(v) + " outside 1.." + std::to_string(orders->size()), line.number,
                       line.tokens[t].column);
    }
    return static_cast<std::size_t>(v - 1);
  };
  auto value = [&](const Line& line, std::size_t t) {
    const std::int64_t v = detail::parse_int(line.tokens[t], line.number);
    if (v < 0 || v >= *zorder) {
      throw ParseError("value " + std::to_string(v) + " outside [0, " + std::to_string(*zorder) + ")", line.number,
                       line.tokens[t].column);
    }
    return static_cast<int>(v);
  };
  auto once = [&](const Line& line, std::vector<std::int64_t> key) {
    if (!seen.insert(std::move(key)).second) throw ParseError("duplicate entry", line.number, line.tokens[0].column);
  };

  for (std::size_t n = 1; n < lines.size(); ++n) {
    const Line& line = lines[n];
    const std::string_view kw = line.tokens[0].text;
    if (kw == "p") {
      detail::expect_arity(line, 2);
      if (p) throw ParseError("duplicate 'p'", line.number, 1);
      p = positive(line, 1);
    } else if (kw == "orders") {
      if (orders) throw ParseError("duplicate 'orders'", line.number, 1);
      std::vector<int> q;
      for (std::size_t t = 1; t < line.tokens.size(); ++t) q.push_back(positive(line, t));
      orders = std::move(q);
    } else if (kw == "zorder") {
      detail::expect_arity(line, 2);
      if (zorder) throw ParseError("duplicate 'zorder'", line.number, 1);
      zorder = positive(line, 1);
    } else if (kw == "zi") {
      detail::expect_arity(line, 3);
      start(line);
      const std::size_t i = index(line, 1);
      once(line, {0, static_cast<std::int64_t>(i)});
      data.z_values[i] = value(line, 2);
    } else if (kw == "chi") {
      detail::expect_arity(line, 4);
      start(line);
      const std::size_t i = index(line, 1), j = index(line, 2);
      if (i >= j) throw ParseError("chi requires i < j", line.number, line.tokens[2].column);
      once(line, {1, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)});
      data.chi_at(i, j) = value(line, 3);
    } else if (kw == "alpha") {
      detail::expect_arity(line, 5);
      start(line);
      const std::size_t i = index(line, 1), j = index(line, 2), l = index(line, 3);
      if (!(i < j && j < l)) throw ParseError("alpha requires i < j < l", line.number, line.tokens[2].column);
      once(line, {2, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), static_cast<std::int64_t>(l)});
      data.alpha_at(i, j, l) = value(line, 4);
    } else {
      throw ParseError("unknown keyword '" + std::string(kw) + "'", line.number, line.tokens[0].column);
    }
  }
  if (!p) throw ParseError("missing 'p'", 0, 0);
  if (!orders) throw ParseError("missing 'orders'", 0, 0);
  if (!zorder) throw ParseError("missing 'zorder'", 0, 0);
  if (!ready) data = CodedModuleData(*p, *orders, *zorder);
  return CodedModule(std::move(data));
}

std::string emit_module(const CodedModule& m) {
  std::ostringstream out;
  const std::size_t k = m.dim();
  out << "module\np " << m.p() << "\norders";
  for (int q : m.orders()) out << ' ' << q;
  out << "\nzorder " << m.zorder() << '\n';
  for (std::size_t i = 0; i < k; ++i) {
    if (m.z_values()[i] != 0) out << "zi " << i + 1 << ' ' << m.z_values()[i] << '\n';
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (m.chi_basis(i, j) != 0) out << "chi " << i + 1 << ' ' << j + 1 << ' ' << m.chi_basis(i, j) << '\n';
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::size_t l = j + 1; l < k; ++l) {
        const int a = m.alpha_basis(i, j, l);
        if (a != 0) out << "alpha " << i + 1 << ' ' << j + 1 << ' ' << l + 1 << ' ' << a << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace codedloops
