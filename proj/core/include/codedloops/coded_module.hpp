#pragma once

// Coded modules: C a finite abelian p-group with basis x_i of orders q_i,
// Z cyclic of order p^r, x_i^{q_i} = z_i, and commutator/associator data.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codedloops/coded_loop.hpp"
#include "codedloops/cvs.hpp"

namespace codedloops {

struct CodedModuleData {
  int p = 2;
  /// q_i, each a power of p.
  std::vector<int> orders;
  /// |Z| = p^r.
  int zorder = 2;
  std::vector<int> z_values;
  /// Full k*k table; only entries with i < j are read, the rest follow by skew-symmetry.
  std::vector<int> chi;
  /// Full k^3 table; only entries with i < j < l are read.
  std::vector<int> alpha;

  CodedModuleData() = default;
  CodedModuleData(int p, std::vector<int> orders, int zorder);
  std::size_t dim() const noexcept { return orders.size(); }
  int& chi_at(std::size_t i, std::size_t j) { return chi[i * dim() + j]; }
  int& alpha_at(std::size_t i, std::size_t j, std::size_t l) { return alpha[(i * dim() + j) * dim() + l]; }
};

class CodedModule {
 public:
  /// Validates the data and throws InvalidArgument naming the violated condition.
  explicit CodedModule(CodedModuleData data);

  int p() const noexcept { return p_; }
  std::size_t dim() const noexcept { return orders_.size(); }
  const std::vector<int>& orders() const noexcept { return orders_; }
  int zorder() const noexcept { return zorder_; }
  const std::vector<int>& z_values() const noexcept { return z_; }
  std::uint64_t order() const noexcept { return order_; }

  /// chi_ij for all i, j (chi_ii = 0, chi_ji = -chi_ij).
  int chi_basis(std::size_t i, std::size_t j) const { return chi_[i * dim() + j]; }
  /// alpha_ijl for all i, j, l, extended alternatingly.
  int alpha_basis(std::size_t i, std::size_t j, std::size_t l) const { return alpha_[(i * dim() + j) * dim() + l]; }
  const std::vector<int>& chi_table() const noexcept { return chi_; }
  const std::vector<int>& alpha_table() const noexcept { return alpha_; }

  /// True when every q_i = p and |Z| = p.
  bool elementary() const noexcept;
  /// The CVS with sigma_i = z_i; throws unless elementary().
  Cvs to_cvs() const;
  static CodedModule from_cvs(const Cvs& cvs);

  bool operator==(const CodedModule&) const = default;

 private:
  int p_;
  std::vector<int> orders_;
  int zorder_;
  std::vector<int> z_;
  std::vector<int> chi_;
  std::vector<int> alpha_;
  std::uint64_t order_ = 1;
};

inline CodedModule module_new(CodedModuleData data) { return CodedModule(std::move(data)); }

/// For p = 2: sum_{i != j} c_i d_j chi_ij + sum_{i<j} sum_l c_i c_j d_l alpha_ijl
/// + sum_i sum_{j<l} c_i d_j d_l alpha_ijl, coordinates taken as integers in [0, q_i).
/// For odd p: the bilinear extension of chi_ij.
int eval_chi_module(const CodedModule& m, const FpVector& c, const FpVector& d);
int eval_alpha_module(const CodedModule& m, const FpVector& c, const FpVector& d, const FpVector& e);
/// sum_i c_i s_i + sum_{i<j} c_i c_j chi_ij + sum_{i<j<l} c_i c_j c_l alpha_ijl, for p = 2.
int eval_sigma2(const CodedModule& m, const std::vector<int>& sigmas, const FpVector& c);

/// The chi/alpha identities (and, with `sigmas`, sigma polarization on an
/// elementary abelian C) over all or sampled tuples of C.
AxiomReport validate_module(const CodedModule& m, const ValidationOptions& options = {},
                            const std::optional<std::vector<int>>& sigmas = std::nullopt);

struct ModuleBuildOptions {
  std::uint64_t max_order = std::uint64_t{1} << 13;
  std::uint64_t theta_cache_elements = 1024;
};

/// The coded extension, elements (z mod |Z|, mixed-radix vector).
CodedLoop build_module_extension(const CodedModule& m, const ModuleBuildOptions& options = {});

/// Checks x_i^{q_i} = z_i on the basis, [a, b] = chi and [a, b, c] = alpha
/// (power, commute, associate).
ExtensionReport verify_module_extension(const CodedLoop& loop, const CodedModule& m,
                                        const ExtensionCheckOptions& options = {});

/// gamma^q for any preimage gamma of c, with c in C_q and |Z| = p. Two
/// preimages are compared and a disagreement throws Error.
int sigma_q(const CodedLoop& loop, std::int64_t q, const FpVector& c);

struct ModuleIsotopyOptions {
  /// Every kappa when |C| is at most this, otherwise this many seeded kappas.
  std::uint64_t kappa_limit = 81;
  ExtensionCheckOptions checks;
};

struct ModuleIsotopyReport {
  std::uint64_t kappas = 0;
  /// Per-kappa checks: powers, commute (chi minus alpha(., kappa, .)), associate.
  std::vector<ExtensionCheck> checks;
  bool passed() const noexcept;
};

/// For p = 3 and |Z| = 3: the kappa-isotopes keep powers and associators and
/// shift commutators by alpha(c, kappa, d)^-1.
ModuleIsotopyReport module_isotopy_check(const CodedModule& m, const ModuleIsotopyOptions& options = {});

/// Module text format: `module`, `p`, `orders q_1 .. q_k`, `zorder`, `zi i v`,
/// `chi i j v` (i < j), `alpha i j l v` (i < j < l); 1-based, '#' comments.
CodedModule parse_module(std::string_view text);
std::string emit_module(const CodedModule& m);

}  // namespace codedloops
