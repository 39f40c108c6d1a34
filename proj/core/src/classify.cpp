#include "codedloops/classify.hpp"

#include <map>
#include <numeric>
#include <tuple>

#include "codedloops/error.hpp"

namespace codedloops {

namespace {

using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;

std::vector<std::pair<std::size_t, std::size_t>> pairs_of(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) out.emplace_back(i, j);
  return out;
}

std::vector<Triple> triples_of(std::size_t k) {
  std::vector<Triple> out;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l) out.emplace_back(i, j, l);
  return out;
}

// Advances a little-endian-last odometer; false after the last value.
bool advance(std::vector<int>& digits, int p) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < p) return true;
    digits[i] = 0;
  }
  return false;
}

bool sigma_vanishes(const Cvs& cvs) {
  for (const auto& c : all_vectors(cvs.dim(), cvs.p())) {
    if (cvs.sigma_raw(c.coords()) != 0) return false;
  }
  return true;
}

auto invariant_key(const CvsClassInvariants& v) {
  return std::make_tuple(v.sigma_trivial, v.chi_trivial, v.rad_chi_dim, v.rad_alpha_dim, v.rad_alpha_in_rad_chi);
}
using InvariantKey = decltype(invariant_key(CvsClassInvariants{}));

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Classes keyed by invariants; a new CVS is tested only against classes with equal keys.
class Buckets {
 public:
  std::optional<std::size_t> find(const Cvs& cvs, const CvsClassInvariants& inv) const {
    auto it = index_.find(invariant_key(inv));
    if (it == index_.end()) return std::nullopt;
    for (auto c : it->second) {
      if (iso_up_to_scalar(classes_[c].representative, cvs)) return c;
    }
    return std::nullopt;
  }

  void add(const Cvs& cvs) {
    const auto inv = class_invariants(cvs);
    if (auto c = find(cvs, inv)) {
      ++classes_[*c].members;
      return;
    }
    index_[invariant_key(inv)].push_back(classes_.size());
    classes_.push_back(CvsClass{cvs, 1, inv, 0});
  }

  std::vector<CvsClass>& classes() { return classes_; }

 private:
  std::vector<CvsClass> classes_;
  std::map<InvariantKey, std::vector<std::size_t>> index_;
};

std::vector<std::vector<int>> all_alpha_tables(int p, std::size_t k, bool nonzero) {
  const auto triples = triples_of(k);
  std::vector<std::vector<int>> out;
  std::vector<int> digits(triples.size(), 0);
  if (p > 3) {
    if (!nonzero) out.push_back(digits);
    return out;
  }
  do {
    if (nonzero && std::all_of(digits.begin(), digits.end(), [](int d) { return d == 0; })) continue;
    out.push_back(digits);
  } while (advance(digits, p));
  return out;
}

Cvs alpha_only(int p, std::size_t k, const std::vector<int>& digits) {
  CvsData d(p, k);
  const auto triples = triples_of(k);
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto [i, j, l] = triples[t];
    d.alpha_at(i, j, l) = digits[t];
  }
  return Cvs(std::move(d));
}

std::vector<int> alpha_digits(const Cvs& cvs) {
  std::vector<int> out;
  for (const auto& [i, j, l] : triples_of(cvs.dim())) out.push_back(cvs.alpha_basis(i, j, l));
  return out;
}

}  // namespace

CvsClassInvariants class_invariants(const Cvs& cvs) {
  const int p = cvs.p();
  const std::size_t k = cvs.dim();
  const auto vectors = all_vectors(k, p);
  std::vector<FpVector> basis;
  for (std::size_t i = 0; i < k; ++i) basis.push_back(cvs.basis_vector(i));

  // alpha is trilinear in every characteristic, so testing against basis pairs suffices.
  std::vector<FpVector> rad_a, rad_c;
  for (const auto& c : vectors) {
    bool in_a = true;
    for (std::size_t j = 0; j < k && in_a; ++j)
      for (std::size_t l = j + 1; l < k && in_a; ++l) in_a = cvs.eval_alpha(c, basis[j], basis[l]) == 0;
    if (in_a) rad_a.push_back(c);

    bool in_c = true;
    if (p == 2) {
      for (const auto& d : vectors) {
        if (cvs.eval_chi(c, d) != 0) {
          in_c = false;
          break;
        }
      }
    } else {
      for (std::size_t j = 0; j < k && in_c; ++j) in_c = cvs.eval_chi(c, basis[j]) == 0;
    }
    if (in_c) rad_c.push_back(c);
  }

  CvsClassInvariants inv;
  inv.sigma_trivial = sigma_vanishes(cvs);
  inv.chi_trivial = rad_c.size() == vectors.size();
  inv.rad_chi_dim = span_dimension(rad_c, p);
  inv.rad_alpha_dim = span_dimension(rad_a, p);
  inv.rad_alpha_in_rad_chi =
      std::all_of(rad_a.begin(), rad_a.end(), [&](const FpVector& c) { return in_span(rad_c, c, p); });
  return inv;
}

std::vector<Cvs> alpha_classes(int p, std::size_t dim) {
  if (p == 2 || !is_prime(p)) throw InvalidArgument("alpha_classes: p must be an odd prime");
  Buckets buckets;
  for (const auto& digits : all_alpha_tables(p, dim, true)) buckets.add(alpha_only(p, dim, digits));
  std::vector<Cvs> out;
  for (const auto& c : buckets.classes()) out.push_back(c.representative);
  return out;
}

ClassifyResult classify_cvs(const ClassifyOptions& options) {
  const int p = options.p;
  const std::size_t k = options.dim;
  if (!is_prime(p)) throw InvalidArgument("classify: p must be prime");
  if (k == 0) throw InvalidArgument("classify: dimension must be positive");
  if (options.exponent != 0 && options.exponent != p && options.exponent != p * p) {
    throw InvalidArgument("classify: exponent must be p or p^2");
  }
  if (options.prune_alpha && p == 2) throw InvalidArgument("classify: alpha pruning needs odd p");

  const auto pairs = pairs_of(k);
  const auto triples = triples_of(k);
  // sigma is linear for odd p, so the exponent condition reads off the basis values.
  const bool fix_sigma = p != 2 && options.exponent == p;

  std::vector<std::vector<int>> alphas;
  ClassifyResult result;
  if (options.prune_alpha) {
    for (const auto& rep : alpha_classes(p, k)) alphas.push_back(alpha_digits(rep));
    if (!options.nonassociative) alphas.insert(alphas.begin(), std::vector<int>(triples.size(), 0));
    result.alpha_classes = alphas.size();
  } else {
    alphas = all_alpha_tables(p, k, options.nonassociative);
  }

  const std::size_t free_digits = (fix_sigma ? 0 : k) + pairs.size();
  const auto per_alpha = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(free_digits),
                                     options.max_tables);
  if (!per_alpha || *per_alpha * alphas.size() > options.max_tables) {
    throw BudgetExceeded("classify: enumeration exceeds " + std::to_string(options.max_tables) + " tables");
  }

  Buckets buckets;
  for (const auto& alpha : alphas) {
    std::vector<int> digits(free_digits, 0);
    do {
      CvsData d(p, k);
      std::size_t pos = 0;
      if (!fix_sigma)
        for (std::size_t i = 0; i < k; ++i) d.sigma_at(i) = digits[pos++];
      for (const auto& [i, j] : pairs) d.chi_at(i, j) = digits[pos++];
      for (std::size_t t = 0; t < triples.size(); ++t) {
        const auto [i, j, l] = triples[t];
        d.alpha_at(i, j, l) = alpha[t];
      }
      Cvs cvs(std::move(d));
      if (options.exponent != 0 && !fix_sigma && sigma_vanishes(cvs) != (options.exponent == p)) continue;
      ++result.tables;
      buckets.add(cvs);
    } while (advance(digits, p));
  }

  auto& classes = buckets.classes();
  UnionFind uf(classes.size());
  if (p == 3) {
    const auto vectors = all_vectors(k, p);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (const auto& kappa : vectors) {
        const Cvs t = adjoint_translate(classes[c].representative, kappa);
        auto target = buckets.find(t, class_invariants(t));
        if (!target) throw Error("classify: an adjoint translate fell outside the enumerated classes");
        uf.unite(c, *target);
      }
    }
  }
  std::map<std::size_t, std::size_t> label;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto [it, fresh] = label.try_emplace(uf.find(c), label.size());
    classes[c].isotopy_class = it->second;
  }
  result.isotopy_classes = label.size();
  result.classes = std::move(classes);
  return result;
}

}  // namespace codedloops
