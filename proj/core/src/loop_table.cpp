#include "codedloops/loop_table.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "codedloops/error.hpp"

namespace codedloops {

namespace {

void require_shape(std::size_t n, const std::vector<std::uint16_t>& table) {
  if (n == 0) throw InvalidArgument("a loop has at least one element");
  if (n > LoopTable::kMaxOrder) {
    throw BudgetExceeded("loop order " + std::to_string(n) + " exceeds " + std::to_string(LoopTable::kMaxOrder));
  }
  if (table.size() != n * n) throw InvalidArgument("Cayley table must have n*n entries");
  for (auto v : table) {
    if (v >= n) throw InvalidArgument("Cayley table entry " + std::to_string(v) + " out of range");
  }
}

}  // namespace

std::optional<std::string> LoopTable::loop_axiom_failure(std::size_t n, const std::vector<std::uint16_t>& t) {
  if (n == 0 || t.size() != n * n) return "table is not n x n";
  for (auto v : t) {
    if (v >= n) return "entry " + std::to_string(v) + " out of range";
  }
  std::vector<char> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      if (seen[t[a * n + b]]++) return "row " + std::to_string(a) + " repeats " + std::to_string(t[a * n + b]);
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t a = 0; a < n; ++a) {
      if (seen[t[a * n + b]]++) return "column " + std::to_string(b) + " repeats " + std::to_string(t[a * n + b]);
    }
  }
  std::optional<std::size_t> e;
  for (std::size_t c = 0; c < n && !e; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = t[c * n + x] == x && t[x * n + c] == x;
    if (ok) e = c;
  }
  if (!e) return "no two-sided identity";
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t r = n;
    for (std::size_t b = 0; b < n; ++b) {
      if (t[a * n + b] == *e) r = b;
    }
    if (t[r * n + a] != *e) return "element " + std::to_string(a) + " has no two-sided inverse";
  }
  return std::nullopt;
}

LoopTable::LoopTable(std::size_t n, std::vector<std::uint16_t> table) {
  require_shape(n, table);
  if (auto why = loop_axiom_failure(n, table)) throw InvalidArgument("not a loop: " + *why);
  n_ = n;
  table_ = std::move(table);
  is_loop_ = true;
  build_divisions();
}

LoopTable LoopTable::unchecked(std::size_t n, std::vector<std::uint16_t> table) {
  require_shape(n, table);
  LoopTable t;
  t.n_ = n;
  t.is_loop_ = !loop_axiom_failure(n, table).has_value();
  t.table_ = std::move(table);
  if (t.is_loop_) t.build_divisions();
  return t;
}

void LoopTable::build_divisions() {
  const std::size_t n = n_;
  ldiv_.assign(n * n, 0);
  rdiv_.assign(n * n, 0);
  inv_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t c = table_[a * n + b];
      ldiv_[a * n + c] = static_cast<std::uint16_t>(b);
      rdiv_[b * n + c] = static_cast<std::uint16_t>(a);
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table_[c * n + x] == x;
    if (ok) {
      identity_ = c;
      break;
    }
  }
  for (std::size_t a = 0; a < n; ++a) inv_[a] = ldiv_[a * n + identity_];
}

// ---------------------------------------------------------------------------
// CSV

LoopTable parse_table_csv(std::string_view text, bool validate) {
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty table", 1, 1);

  std::optional<std::size_t> n;
  int p = 0;
  std::size_t k = 0;
  {
    std::string_view header = lines[0];
    std::size_t col = 1;
    while (!header.empty()) {
      std::size_t comma = header.find(',');
      std::string_view field = header.substr(0, comma);
      std::size_t eq = field.find('=');
      if (eq == std::string_view::npos) throw ParseError("header field without '='", 1, col);
      std::string_view key = field.substr(0, eq);
      std::string_view val = field.substr(eq + 1);
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
      if (ec != std::errc() || ptr != val.data() + val.size()) {
        throw ParseError("header value is not a nonnegative integer", 1, col + eq + 1);
      }
      if (key == "n") {
        n = static_cast<std::size_t>(v);
      } else if (key == "p") {
        p = static_cast<int>(v);
      } else if (key == "k") {
        k = static_cast<std::size_t>(v);
      } else {
        throw ParseError("unknown header key '" + std::string(key) + "'", 1, col);
      }
      if (comma == std::string_view::npos) break;
      header.remove_prefix(comma + 1);
      col += comma + 1;
    }
  }
  if (!n) throw ParseError("header lacks n=<order>", 1, 1);
  if (*n == 0 || *n > LoopTable::kMaxOrder) throw ParseError("order out of range", 1, 1);
  if (lines.size() != *n + 1) {
    throw ParseError("expected " + std::to_string(*n) + " rows, found " + std::to_string(lines.size() - 1),
                     lines.size(), 1);
  }
  std::vector<std::uint16_t> table;
  table.reserve(*n * *n);
  for (std::size_t r = 0; r < *n; ++r) {
    std::string_view row = lines[r + 1];
    std::size_t col = 1;
    std::size_t count = 0;
    while (true) {
      std::size_t comma = row.find(',');
      std::string_view cell = row.substr(0, comma);
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
        throw ParseError("malformed entry '" + std::string(cell) + "'", r + 2, col);
      }
      if (v >= *n) throw ParseError("entry " + std::to_string(v) + " out of range", r + 2, col);
      table.push_back(static_cast<std::uint16_t>(v));
      ++count;
      if (comma == std::string_view::npos) break;
      row.remove_prefix(comma + 1);
      col += comma + 1;
    }
    if (count != *n) {
      throw ParseError("row has " + std::to_string(count) + " entries, expected " + std::to_string(*n), r + 2, 1);
    }
  }
  LoopTable t = validate ? LoopTable(*n, std::move(table)) : LoopTable::unchecked(*n, std::move(table));
  t.set_labels(p, k);
  return t;
}

std::string emit_table_csv(const LoopTable& t) {
  std::ostringstream out;
  const std::size_t n = t.order();
  out << "n=" << n << ",p=" << t.prime() << ",k=" << t.rank() << '\n';
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (b) out << ',';
      out << t.mul(a, b);
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Small groups

LoopTable cyclic_group(std::size_t n) {
  std::vector<std::uint16_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint16_t>((a + b) % n);
  }
  return LoopTable(n, std::move(t));
}

LoopTable direct_product(const LoopTable& a, const LoopTable& b) {
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  const std::size_t n = na * nb;
  if (n > LoopTable::kMaxOrder) throw BudgetExceeded("direct product too large");
  std::vector<std::uint16_t> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      t[x * n + y] = static_cast<std::uint16_t>(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
    }
  }
  return LoopTable(n, std::move(t));
}

LoopTable dihedral_group(std::size_t n) {
  // s^a r^i * s^b r^j = s^(a+b) r^((-1)^b i + j)
  const std::size_t m = 2 * n;
  std::vector<std::uint16_t> t(m * m);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t a = x / n, i = x % n, b = y / n, j = y % n;
      const std::size_t rot = (b ? (n - i) % n : i) + j;
      t[x * m + y] = static_cast<std::uint16_t>(((a + b) % 2) * n + rot % n);
    }
  }
  return LoopTable(m, std::move(t));
}

}  // namespace codedloops
