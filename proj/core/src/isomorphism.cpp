#include <algorithm>
#include <tuple>

#include "codedloops/error.hpp"
#include "codedloops/loop_analysis.hpp"

namespace codedloops {

namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

// Invariants preserved by isomorphisms, used to prune candidate images.
struct Profile {
  std::size_t order = 0;
  std::size_t commuting = 0;
  bool central = false;
  bool nuclear = false;
  std::size_t square_class = 0;

  auto key() const { return std::tie(order, commuting, central, nuclear, square_class); }
  bool operator==(const Profile& o) const { return key() == o.key(); }
};

std::vector<Profile> profiles(const LoopTable& loop) {
  const std::size_t n = loop.order();
  std::vector<Profile> out(n);
  std::vector<char> nuc(n, 0), cen(n, 0);
  for (auto x : nucleus(loop)) nuc[x] = 1;
  for (auto x : center(loop)) cen[x] = 1;
  std::vector<std::size_t> orders(n);
  for (std::size_t x = 0; x < n; ++x) orders[x] = element_order(loop, x);
  for (std::size_t x = 0; x < n; ++x) {
    Profile& p = out[x];
    p.order = orders[x];
    p.central = cen[x];
    p.nuclear = nuc[x];
    for (std::size_t y = 0; y < n; ++y) p.commuting += loop.mul(x, y) == loop.mul(y, x);
    p.square_class = orders[loop.mul(x, x)];
  }
  return out;
}

class Search {
 public:
  Search(const LoopTable& l, const LoopTable& m) : l_(l), m_(m), n_(l.order()) {
    fwd_.assign(n_, kUnset);
    used_.assign(n_, 0);
    fwd_[l.identity()] = m.identity();
    used_[m.identity()] = 1;
    domain_.push_back(l.identity());
  }

  bool run(const std::vector<std::size_t>& gens, const std::vector<std::vector<std::size_t>>& candidates,
           std::size_t depth) {
    if (depth == gens.size()) return domain_.size() == n_;
    const std::size_t g = gens[depth];
    for (auto y : candidates[depth]) {
      if (used_[y]) continue;
      const std::size_t mark = domain_.size();
      if (assign(g, y) && close(mark) && run(gens, candidates, depth + 1)) return true;
      undo(mark);
    }
    return false;
  }

  std::vector<std::size_t> map() const { return fwd_; }

 private:
  bool assign(std::size_t x, std::size_t y) {
    if (fwd_[x] != kUnset) return fwd_[x] == y;
    if (used_[y]) return false;
    fwd_[x] = y;
    used_[y] = 1;
    domain_.push_back(x);
    return true;
  }

  // Extends the map to the subloop generated by the domain, checking it is a
  // homomorphism on every pair involving an element added since `mark`.
  bool close(std::size_t mark) {
    for (std::size_t i = mark; i < domain_.size(); ++i) {
      const std::size_t a = domain_[i];
      for (std::size_t j = 0; j <= i; ++j) {
        const std::size_t b = domain_[j];
        if (!assign(l_.mul(a, b), m_.mul(fwd_[a], fwd_[b]))) return false;
        if (!assign(l_.mul(b, a), m_.mul(fwd_[b], fwd_[a]))) return false;
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (domain_.size() > mark) {
      const std::size_t x = domain_.back();
      domain_.pop_back();
      used_[fwd_[x]] = 0;
      fwd_[x] = kUnset;
    }
  }

  const LoopTable& l_;
  const LoopTable& m_;
  std::size_t n_;
  std::vector<std::size_t> fwd_;
  std::vector<char> used_;
  std::vector<std::size_t> domain_;
};

}  // namespace

std::optional<std::vector<std::size_t>> brute_force_isomorphic(const LoopTable& l, const LoopTable& m,
                                                                 const IsoOptions& options) {
  if (!l.is_loop() || !m.is_loop()) throw InvalidArgument("isomorphism test needs loops");
  if (l.order() != m.order()) return std::nullopt;
  const std::size_t n = l.order();
  if (n > options.max_order) {
    throw BudgetExceeded("isomorphism search limited to order " + std::to_string(options.max_order));
  }

  const auto pl = profiles(l);
  const auto pm = profiles(m);
  {
    auto sorted_keys = [](const std::vector<Profile>& ps) {
      std::vector<std::tuple<std::size_t, std::size_t, bool, bool, std::size_t>> k;
      for (const auto& p : ps) k.emplace_back(p.key());
      std::sort(k.begin(), k.end());
      return k;
    };
    if (sorted_keys(pl) != sorted_keys(pm)) return std::nullopt;
  }

  // Greedy generators: the least element outside the current closure.
  std::vector<std::size_t> gens;
  {
    std::vector<char> in(n, 0);
    Subloop s{l.identity()};
    in[l.identity()] = 1;
    for (std::size_t x = 0; x < n; ++x) {
      if (in[x]) continue;
      gens.push_back(x);
      s = generated_subloop(l, gens);
      for (auto y : s) in[y] = 1;
    }
  }
  std::vector<std::vector<std::size_t>> candidates;
  for (auto g : gens) {
    std::vector<std::size_t> c;
    for (std::size_t y = 0; y < n; ++y) {
      if (pm[y] == pl[g]) c.push_back(y);
    }
    candidates.push_back(std::move(c));
  }

  Search search(l, m);
  if (!search.run(gens, candidates, 0)) return std::nullopt;
  return search.map();
}

}  // namespace codedloops
