#include <set>
#include <sstream>

#include "codedloops/cvs.hpp"
#include "codedloops/error.hpp"
#include "text_util.hpp"

namespace codedloops {

Cvs parse_cvs(std::string_view text) {
  using detail::Line;
  const auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError("empty input, expected 'cvs' header", 1, 1);
  if (lines[0].tokens[0].text != "cvs" || lines[0].tokens.size() != 1) {
    throw ParseError("expected 'cvs' header", lines[0].number, lines[0].tokens[0].column);
  }

  std::optional<int> p;
  std::optional<std::size_t> k;
  CvsData data;
  std::set<std::vector<std::int64_t>> seen;

  auto index = [&](const Line& line, std::size_t t) -> std::size_t {
    const auto& tok = line.tokens[t];
    if (!k) throw ParseError("'dim' must precede entries", line.number, tok.column);
    const std::int64_t v = detail::parse_int(tok, line.number);
    if (v < 1 || static_cast<std::size_t>(v) > *k) {
      throw ParseError("index " + std::to_string(v) + " outside 1.." + std::to_string(*k), line.number, tok.column);
    }
    return static_cast<std::size_t>(v - 1);
  };
  auto value = [&](const Line& line, std::size_t t) -> int {
    const auto& tok = line.tokens[t];
    if (!p) throw ParseError("'p' must precede entries", line.number, tok.column);
    const std::int64_t v = detail::parse_int(tok, line.number);
    if (v < 0 || v >= *p) {
      throw ParseError("value " + std::to_string(v) + " outside [0, " + std::to_string(*p) + ")", line.number,
                       tok.column);
    }
    return static_cast<int>(v);
  };
  auto ready = [&](const Line& line) {
    if (!p || !k) throw ParseError("'p' and 'dim' must precede entries", line.number, line.tokens[0].column);
    if (data.k != *k || data.p != *p) data = CvsData(*p, *k);
  };
  auto once = [&](const Line& line, std::vector<std::int64_t> key) {
    if (!seen.insert(std::move(key)).second) {
      throw ParseError("duplicate entry", line.number, line.tokens[0].column);
    }
  };

  for (std::size_t n = 1; n < lines.size(); ++n) {
    const Line& line = lines[n];
    const std::string_view kw = line.tokens[0].text;
    if (kw == "p") {
      detail::expect_arity(line, 2);
      if (p) throw ParseError("duplicate 'p'", line.number, 1);
      const std::int64_t v = detail::parse_int(line.tokens[1], line.number);
      if (v < 2 || v > 46337 || !is_prime(v)) {
        throw ParseError("p = " + std::to_string(v) + " is not a prime", line.number, line.tokens[1].column);
      }
      p = static_cast<int>(v);
    } else if (kw == "dim") {
      detail::expect_arity(line, 2);
      if (k) throw ParseError("duplicate 'dim'", line.number, 1);
      const std::int64_t v = detail::parse_int(line.tokens[1], line.number);
      if (v < 0 || v > 64) throw ParseError("dim must lie in 0..64", line.number, line.tokens[1].column);
      k = static_cast<std::size_t>(v);
    } else if (kw == "sigma") {
      detail::expect_arity(line, 3);
      ready(line);
      const std::size_t i = index(line, 1);
      once(line, {0, static_cast<std::int64_t>(i)});
      data.sigma_at(i) = value(line, 2);
    } else if (kw == "chi") {
      detail::expect_arity(line, 4);
      ready(line);
      const std::size_t i = index(line, 1);
      const std::size_t j = index(line, 2);
      if (i >= j) throw ParseError("chi requires i < j", line.number, line.tokens[2].column);
      once(line, {1, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)});
      data.chi_at(i, j) = value(line, 3);
    } else if (kw == "alpha") {
      detail::expect_arity(line, 5);
      ready(line);
      const std::size_t i = index(line, 1);
      const std::size_t j = index(line, 2);
      const std::size_t l = index(line, 3);
      if (!(i < j && j < l)) throw ParseError("alpha requires i < j < l", line.number, line.tokens[2].column);
      once(line, {2, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), static_cast<std::int64_t>(l)});
      const int v = value(line, 4);
      if (v != 0 && *p > 3) throw ParseError("alpha must vanish for p > 3", line.number, line.tokens[4].column);
      data.alpha_at(i, j, l) = v;
    } else {
      throw ParseError("unknown keyword '" + std::string(kw) + "'", line.number, line.tokens[0].column);
    }
  }
  if (!p) throw ParseError("missing 'p'", 0, 0);
  if (!k) throw ParseError("missing 'dim'", 0, 0);
  if (data.k != *k || data.p != *p) data = CvsData(*p, *k);
  return Cvs(std::move(data));
}

std::string emit_cvs(const Cvs& cvs) {
  std::ostringstream out;
  const std::size_t k = cvs.dim();
  out << "cvs\np " << cvs.p() << "\ndim " << k << '\n';
  for (std::size_t i = 0; i < k; ++i) {
    if (cvs.sigma_basis(i) != 0) out << "sigma " << i + 1 << ' ' << cvs.sigma_basis(i) << '\n';
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (cvs.chi_basis(i, j) != 0) out << "chi " << i + 1 << ' ' << j + 1 << ' ' << cvs.chi_basis(i, j) << '\n';
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::size_t l = j + 1; l < k; ++l) {
        const int a = cvs.alpha_basis(i, j, l);
        if (a != 0) out << "alpha " << i + 1 << ' ' << j + 1 << ' ' << l + 1 << ' ' << a << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace codedloops
