#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "codedloops/binary_code.hpp"
#include "codedloops/classify.hpp"
#include "codedloops/coded_loop.hpp"
#include "codedloops/coded_module.hpp"
#include "codedloops/cvs.hpp"
#include "codedloops/error.hpp"
#include "codedloops/loop_analysis.hpp"
#include "codedloops/word.hpp"

namespace codedloops::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* flag(bool b) { return b ? "true" : "false"; }

std::string read_input(const std::string& path) {
  std::ostringstream s;
  if (path == "-") {
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

template <class Seq>
std::string join(const Seq& items, const char* sep = ",") {
  std::string s;
  for (const auto& x : items) {
    if (!s.empty()) s += sep;
    if constexpr (std::is_arithmetic_v<std::decay_t<decltype(x)>>) {
      s += std::to_string(x);
    } else {
      s += x.to_string();
    }
  }
  return s;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad entry '") + item + "' in " + what);
    }
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what);
  return out;
}

// ---------------------------------------------------------------------------
// Reports

int report_axioms(const AxiomReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << "axiom." << c.name << '=' << (c.passed ? "pass" : "fail") << '\n';
    out << "axiom." << c.name << ".tuples=" << c.tuples << '\n';
    out << "axiom." << c.name << ".mode=" << (c.exhaustive ? "exhaustive" : "sampled") << '\n';
  }
  out << "axioms=" << (report.passed() ? "pass" : "fail") << '\n';
  if (const auto* f = report.first_failure()) {
    out << "failed=" << f->name << '\n';
    out << "witness=" << join(f->witness, " ") << '\n';
    if (f->witness_n) out << "witness_n=" << *f->witness_n << '\n';
    return kPropertyFails;
  }
  return kOk;
}

int report_extension(const ExtensionReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << "extension." << c.name << '=' << (c.passed ? "pass" : "fail") << '\n';
    out << "extension." << c.name << ".tuples=" << c.tuples << '\n';
  }
  if (const auto* f = report.first_failure()) {
    out << "failed=" << f->name << '\n';
    out << "witness=" << join(f->witness, " ") << '\n';
    return kPropertyFails;
  }
  return kOk;
}

int report_loop(const LoopTable& t, std::ostream& out) {
  out << "order=" << t.order() << '\n';
  const auto moufang = check_moufang(t);
  out << "moufang=" << flag(moufang.holds) << '\n';
  if (!moufang.holds) {
    out << "identity=" << moufang.identity << '\n';
    out << "witness=" << join(moufang.witness) << '\n';
    return kPropertyFails;
  }
  const auto z = center(t);
  const auto derived = derived_subloops(t);
  const auto cls = nilpotency_class(t);
  const auto p = loop_prime(t);
  out << "assoc=" << flag(is_associative(t)) << '\n';
  out << "commutative=" << flag(is_commutative(t)) << '\n';
  out << "class=" << (cls ? std::to_string(*cls) : "none") << '\n';
  out << "p=" << (p ? std::to_string(*p) : "none") << '\n';
  out << "Z=" << z.size() << '\n';
  out << "N=" << nucleus(t).size() << '\n';
  out << "C=" << moufang_center(t).size() << '\n';
  out << "Lprime=" << derived.centrally_derived.size() << '\n';
  out << "Lstar=" << derived.nuclearly_derived.size() << '\n';
  out << "exp_Lstar=" << exponent(t, derived.nuclearly_derived) << '\n';
  std::optional<Subloop> phi;
  try {
    phi = frattini(t);
  } catch (const BudgetExceeded&) {
  }
  out << "frattini=" << (phi ? std::to_string(phi->size()) : "unknown") << '\n';
  const bool small = p && phi && (phi->size() == 1 || phi->size() == static_cast<std::size_t>(*p));
  const bool extraspecial = p && phi && *phi == z && z == derived.centrally_derived &&
                            z.size() == static_cast<std::size_t>(*p);
  out << "small_frattini=" << flag(small) << '\n';
  out << "extraspecial=" << flag(extraspecial) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// Table word evaluation

struct TableAlgebra {
  const LoopTable& t;
  std::vector<std::size_t> gens;
  std::size_t z;
  std::size_t identity() const { return t.identity(); }
  std::size_t dim() const { return gens.size(); }
  std::size_t generator(std::size_t i) const { return gens[i]; }
  std::size_t central_generator() const { return z; }
  std::size_t mul(std::size_t a, std::size_t b) const { return t.mul(a, b); }
  std::size_t inv(std::size_t a) const { return t.inv(a); }
  std::size_t pow(std::size_t a, std::int64_t n) const { return power(t, a, n); }
};

// z^b g1^r1(g2^r2(...)) with all exponents below p, if `x` has that form.
std::optional<NormalForm> table_normal_form(const TableAlgebra& a, int p, std::size_t x) {
  const std::size_t k = a.dim();
  std::vector<int> r(k, 0);
  for (;;) {
    std::size_t tail = a.identity();
    for (std::size_t i = k; i-- > 0;) tail = a.mul(a.pow(a.generator(i), r[i]), tail);
    for (int b = 0; b < p; ++b) {
      if (a.mul(a.pow(a.z, b), tail) == x) return NormalForm{b, r};
    }
    std::size_t i = k;
    while (i > 0 && ++r[i - 1] == p) r[--i] = 0;
    if (i == 0) return std::nullopt;
  }
}

std::size_t parse_label(const std::string& s, std::size_t n, const char* what) {
  const auto v = parse_int_list(s, what);
  if (v.size() != 1 || v[0] < 0 || static_cast<std::size_t>(v[0]) >= n) {
    throw UsageError(std::string("bad ") + what + " '" + s + "'");
  }
  return static_cast<std::size_t>(v[0]);
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

bool looks_like_table(const std::string& text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  return start != std::string::npos && text.compare(start, 2, "n=") == 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Class-2 Moufang loops: coded vector spaces, code loops and their isotopes", "codedloops"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::uint64_t seed = 0;
  std::uint64_t tuple_limit = std::uint64_t{1} << 15;
  std::string input, out_path;

  auto* verify_cvs = app.add_subcommand("verify-cvs", "Check the CVS axioms and analyze the coded extension");
  std::uint64_t analysis_order = 256;
  verify_cvs->add_option("file", input, "CVS file ('-' for stdin)")->required();
  verify_cvs->add_option("--seed", seed, "Seed for sampled checks");
  verify_cvs->add_option("--tuple-limit", tuple_limit, "Tuple budget per identity");
  verify_cvs->add_option("--max-order", analysis_order, "Largest loop order analyzed as a table");

  auto* verify_loop = app.add_subcommand("verify-loop", "Analyze a loop given by its Cayley table");
  verify_loop->add_option("file", input, "Table CSV ('-' for stdin)")->required();

  auto* build_cmd = app.add_subcommand("build", "Build the coded extension of a CVS");
  std::string table_path;
  std::uint64_t table_order = 1024;
  build_cmd->add_option("file", input, "CVS file")->required();
  build_cmd->add_option("--table", table_path, "Write the Cayley table CSV here");
  build_cmd->add_option("--max-order", table_order, "Largest order written as a table");
  build_cmd->add_option("--seed", seed, "Seed for sampled validation");

  auto* code2cvs = app.add_subcommand("code2cvs", "CVS of a doubly even code");
  code2cvs->add_option("file", input, "Code file")->required();
  code2cvs->add_option("--out", out_path, "Output file (default stdout)");

  auto* cvs2code = app.add_subcommand("cvs2code", "Doubly even code realizing a CVS over F_2");
  cvs2code->add_option("file", input, "CVS file")->required();
  cvs2code->add_option("--out", out_path, "Output file (default stdout)");

  auto* isotope = app.add_subcommand("isotope", "Adjoint translate adt_kappa of a CVS");
  std::string kappa_text;
  isotope->add_option("file", input, "CVS file")->required();
  isotope->add_option("--kappa", kappa_text, "Coordinates c1,c2,... of kappa ('0' for the zero vector)")
      ->required();
  isotope->add_option("--out", out_path, "Output file (default stdout)");

  auto* classify = app.add_subcommand("classify", "Isomorphism and isotopy classes of CVSs");
  ClassifyOptions copts;
  std::string prune = "auto";
  classify->add_option("--p", copts.p, "Prime")->required();
  classify->add_option("--dim", copts.dim, "Dimension")->required();
  classify->add_option("--exponent", copts.exponent, "Loop exponent p or p^2 (0: any)");
  classify->add_flag("--nonassociative", copts.nonassociative, "Only alpha != 0");
  classify->add_option("--prune", prune, "Fix alpha to class representatives: auto, on or off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  classify->add_option("--max-tables", copts.max_tables, "Enumeration budget");

  auto* eval = app.add_subcommand("eval", "Evaluate a word in a coded extension or a Cayley table");
  std::string expr, assoc = "none", gen_labels, z_label;
  int table_p = 0;
  eval->add_option("file", input, "CVS file or table CSV")->required();
  eval->add_option("--expr", expr, "Word, e.g. \"[g1,(g2*g3)]^2\"")->required();
  eval->add_option("--assoc", assoc, "Association of unparenthesized products: none or left")
      ->check(CLI::IsMember({"none", "left"}));
  eval->add_option("--gen", gen_labels, "Table labels of g1,g2,... (default from the table header)");
  eval->add_option("--z", z_label, "Table label of z (default from the table header)");
  eval->add_option("--p", table_p, "Exponent bound for table normal forms (default from the header)");

  auto* builtin = app.add_subcommand("builtin", "Emit a builtin code");
  std::string builtin_name;
  bool as_cvs = false, as_code = false;
  builtin->add_option("name", builtin_name, "hamming or golay")
      ->required()
      ->check(CLI::IsMember({"hamming", "golay"}));
  auto* as_cvs_flag = builtin->add_flag("--as-cvs", as_cvs, "Emit the CVS");
  builtin->add_flag("--as-code", as_code, "Emit the code (default)")->excludes(as_cvs_flag);
  builtin->add_option("--out", out_path, "Output file (default stdout)");

  auto* verify_module = app.add_subcommand("verify-module", "Check a coded module and its extension");
  std::uint64_t module_order = 1024, moufang_triples = 20000;
  verify_module->add_option("file", input, "Module file")->required();
  verify_module->add_option("--seed", seed, "Seed for sampled checks");
  verify_module->add_option("--tuple-limit", tuple_limit, "Tuple budget per identity");
  verify_module->add_option("--max-order", module_order, "Largest extension built");
  verify_module->add_option("--moufang-triples", moufang_triples, "Sampled Moufang triples");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (verify_cvs->parsed()) {
      const Cvs cvs = parse_cvs(read_input(input));
      out << "p=" << cvs.p() << "\ndim=" << cvs.dim() << '\n';
      const auto report = validate_axioms(cvs, ValidationOptions{tuple_limit, seed});
      if (const int rc = report_axioms(report, out); rc != kOk) return rc;
      const auto order = checked_pow(static_cast<std::uint64_t>(cvs.p()), static_cast<unsigned>(cvs.dim() + 1),
                                     analysis_order);
      if (!order) {
        out << "# loop analysis skipped: order exceeds --max-order\n";
        return kOk;
      }
      BuildOptions b;
      b.validate = false;
      return report_loop(to_table(build(cvs, b)), out);
    }

    if (verify_loop->parsed()) {
      const std::string text = read_input(input);
      const LoopTable t = parse_table_csv(text, false);
      if (!t.is_loop()) {
        std::vector<std::uint16_t> raw = t.table();
        out << "order=" << t.order() << "\nloop=false\n";
        if (auto why = LoopTable::loop_axiom_failure(t.order(), raw)) out << "reason=" << *why << '\n';
        return kPropertyFails;
      }
      return report_loop(t, out);
    }

    if (build_cmd->parsed()) {
      const Cvs cvs = parse_cvs(read_input(input));
      BuildOptions b;
      b.validation.seed = seed;
      const CodedLoop loop = build(cvs, b);
      out << "order=" << loop.order() << '\n';
      if (table_path.empty()) {
        out << "table=skipped\n";
        return kOk;
      }
      if (loop.order() > table_order || loop.order() > LoopTable::kMaxOrder) {
        err << "error: order " << loop.order() << " exceeds --max-order " << table_order << '\n';
        return kUsage;
      }
      write_output(table_path, emit_table_csv(to_table(loop)), out);
      out << "table=" << table_path << '\n';
      return kOk;
    }

    if (code2cvs->parsed()) {
      const BinaryCode code = parse_code(read_input(input));
      if (!is_doubly_even(code)) {
        err << "error: the code is not doubly even\n";
        return kPropertyFails;
      }
      write_output(out_path, emit_cvs(code_to_cvs(code)), out);
      return kOk;
    }

    if (cvs2code->parsed()) {
      const Cvs cvs = parse_cvs(read_input(input));
      const BinaryCode code = cvs_to_code(cvs);
      write_output(out_path, emit_code(code), out);
      (out_path.empty() || out_path == "-" ? err : out) << "length=" << code.length() << '\n';
      return kOk;
    }

    if (isotope->parsed()) {
      const Cvs cvs = parse_cvs(read_input(input));
      auto coords = parse_int_list(kappa_text, "--kappa");
      if (coords.size() == 1 && coords[0] == 0) coords.assign(cvs.dim(), 0);
      if (coords.size() != cvs.dim()) {
        throw UsageError("--kappa needs " + std::to_string(cvs.dim()) + " coordinates");
      }
      write_output(out_path, emit_cvs(adjoint_translate(cvs, FpVector::uniform(coords, cvs.p()))), out);
      return kOk;
    }

    if (classify->parsed()) {
      copts.prune_alpha = prune == "on" || (prune == "auto" && copts.p == 3 && copts.dim >= 4);
      const auto r = classify_cvs(copts);
      out << "tables=" << r.tables << '\n';
      if (copts.prune_alpha) out << "alpha_classes=" << r.alpha_classes << '\n';
      out << "iso_classes=" << r.classes.size() << '\n';
      out << "isotopy_classes=" << r.isotopy_classes << '\n';
      for (std::size_t i = 0; i < r.classes.size(); ++i) {
        const auto& c = r.classes[i];
        const auto& v = c.invariants;
        const std::string key = "class." + std::to_string(i + 1) + '.';
        const Cvs& rep = c.representative;
        std::vector<int> sigma, chi, alpha;
        for (std::size_t a = 0; a < rep.dim(); ++a) {
          sigma.push_back(rep.sigma_basis(a));
          for (std::size_t b = a + 1; b < rep.dim(); ++b) {
            chi.push_back(rep.chi_basis(a, b));
            for (std::size_t d = b + 1; d < rep.dim(); ++d) alpha.push_back(rep.alpha_basis(a, b, d));
          }
        }
        out << key << "members=" << c.members << '\n';
        out << key << "isotopy=" << c.isotopy_class + 1 << '\n';
        out << key << "sigma=" << join(sigma) << '\n';
        out << key << "chi=" << join(chi) << '\n';
        out << key << "alpha=" << join(alpha) << '\n';
        out << key << "chi_trivial=" << flag(v.chi_trivial) << '\n';
        out << key << "rad_chi_dim=" << v.rad_chi_dim << '\n';
        out << key << "rad_alpha_dim=" << v.rad_alpha_dim << '\n';
        out << key << "rad_alpha_in_rad_chi=" << flag(v.rad_alpha_in_rad_chi) << '\n';
      }
      return kOk;
    }

    if (eval->parsed()) {
      const std::string text = read_input(input);
      Word w;
      try {
        w = parse_word(expr, WordParseOptions{assoc == "left"});
      } catch (const ParseError& e) {
        err << caret_diagnostic(expr, e.column(), e.what()) << '\n';
        return kUsage;
      }
      if (!looks_like_table(text)) {
        out << normal_form_string(w, build(parse_cvs(text))) << '\n';
        return kOk;
      }
      const LoopTable t = parse_table_csv(text);
      const int p = table_p ? table_p : t.prime();
      std::vector<std::size_t> gens;
      std::size_t z = 0;
      if (!gen_labels.empty()) {
        for (int g : parse_int_list(gen_labels, "--gen")) gens.push_back(parse_label(std::to_string(g), t.order(), "--gen"));
      } else if (t.prime() > 1 && t.rank() > 0) {
        // Labels of build output: z^a x_1^v1 ... x_k^vk sits at a p^k + rank(v), slot 0 most significant.
        for (std::size_t i = 0; i < t.rank(); ++i) gens.push_back(ipow(t.prime(), t.rank() - 1 - i));
      } else {
        throw UsageError("the table has no p,k header; pass --gen and --z");
      }
      if (!z_label.empty()) {
        z = parse_label(z_label, t.order(), "--z");
      } else if (t.prime() > 1) {
        z = ipow(t.prime(), t.rank());
      } else {
        throw UsageError("pass --z for a table without a p,k header");
      }
      if (z >= t.order()) throw UsageError("z label out of range");
      const TableAlgebra algebra{t, gens, z};
      const std::size_t x = eval_word_in(w, algebra);
      std::optional<NormalForm> nf;
      if (p > 1) nf = table_normal_form(algebra, p, x);
      out << (nf ? normal_form_string(*nf) : "element " + std::to_string(x)) << '\n';
      return kOk;
    }

    if (builtin->parsed()) {
      const BinaryCode code = builtin_name == "golay" ? builtin_golay24() : builtin_hamming734();
      write_output(out_path, as_cvs ? emit_cvs(code_to_cvs(code)) : emit_code(code), out);
      return kOk;
    }

    if (verify_module->parsed()) {
      const CodedModule m = parse_module(read_input(input));
      out << "p=" << m.p() << "\ndim=" << m.dim() << "\nzorder=" << m.zorder() << '\n';
      if (const int rc = report_axioms(validate_module(m, ValidationOptions{tuple_limit, seed}), out); rc != kOk) {
        return rc;
      }
      const std::uint64_t order = m.order() * static_cast<std::uint64_t>(m.zorder());
      if (order > module_order) {
        out << "order=" << order << "\n# extension skipped: order exceeds --max-order\n";
        return kOk;
      }
      ModuleBuildOptions b;
      b.max_order = module_order;
      const CodedLoop loop = build_module_extension(m, b);
      out << "order=" << loop.order() << '\n';
      if (const int rc = report_extension(verify_module_extension(loop, m, ExtensionCheckOptions{tuple_limit, seed}), out);
          rc != kOk) {
        return rc;
      }
      const auto mf = moufang_sampled(loop, moufang_triples, seed);
      out << "moufang=" << flag(mf.passed) << '\n';
      out << "moufang.triples=" << mf.triples << '\n';
      if (!mf.passed) {
        out << "identity=" << mf.identity << "\nwitness=" << join(mf.witness, " ") << '\n';
        return kPropertyFails;
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kPropertyFails;
  }
  return kUsage;
}

}  // namespace codedloops::cli
