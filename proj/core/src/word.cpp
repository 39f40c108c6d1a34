#include "codedloops/word.hpp"

#include <cctype>
#include <charconv>

namespace codedloops {

Word Word::generator(std::size_t i) {
  Word w;
  w.kind = Kind::Generator;
  w.index = i;
  return w;
}

Word Word::central() { return Word{}; }

Word Word::product(Word a, Word b) {
  Word w;
  w.kind = Kind::Product;
  w.children = {std::move(a), std::move(b)};
  return w;
}

Word Word::power(Word base, std::int64_t n) {
  Word w;
  w.kind = Kind::Power;
  w.exponent = n;
  w.children = {std::move(base)};
  return w;
}

Word Word::commutator(Word a, Word b) {
  Word w;
  w.kind = Kind::Commutator;
  w.children = {std::move(a), std::move(b)};
  return w;
}

Word Word::associator(Word a, Word b, Word c) {
  Word w;
  w.kind = Kind::Associator;
  w.children = {std::move(a), std::move(b), std::move(c)};
  return w;
}

bool Word::operator==(const Word& o) const {
  return kind == o.kind && index == o.index && exponent == o.exponent && children == o.children;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const WordParseOptions& options) : s_(text), opt_(options) {}

  Word parse() {
    Word w = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos_ + 1); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) {
      if (pos_ >= s_.size()) fail(std::string("expected '") + c + "', found end of input");
      fail(std::string("expected '") + c + "', found '" + s_[pos_] + "'");
    }
    ++pos_;
  }

  Word expr() {
    Word left = word();
    if (!peek('*')) return left;
    const std::size_t star = pos_;
    ++pos_;
    Word w = Word::product(std::move(left), word());
    w.column = star + 1;
    while (peek('*')) {
      if (!opt_.left_assoc) fail("products of three or more factors need parentheses to fix the association");
      const std::size_t col = pos_ + 1;
      ++pos_;
      w = Word::product(std::move(w), word());
      w.column = col;
    }
    return w;
  }

  Word word() {
    Word w = primary();
    while (peek('^')) {
      const std::size_t col = pos_ + 1;
      ++pos_;
      w = Word::power(std::move(w), integer());
      w.column = col;
    }
    return w;
  }

  Word primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const std::size_t col = pos_ + 1;
    const char c = s_[pos_];
    if (c == 'z') {
      ++pos_;
      Word w = Word::central();
      w.column = col;
      return w;
    }
    if (c == 'g') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected generator index after 'g'");
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::size_t i = 0;
      auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, i);
      if (ec != std::errc() || i == 0) {
        pos_ = start;
        fail("generator indices start at 1");
      }
      Word w = Word::generator(i);
      w.column = col;
      return w;
    }
    if (c == '(') {
      ++pos_;
      Word w = expr();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      std::vector<Word> parts{expr()};
      while (peek(',')) {
        ++pos_;
        parts.push_back(expr());
      }
      if (parts.size() != 2 && parts.size() != 3) fail("a bracket takes two or three entries");
      expect(']');
      Word w = parts.size() == 2 ? Word::commutator(std::move(parts[0]), std::move(parts[1]))
                                 : Word::associator(std::move(parts[0]), std::move(parts[1]), std::move(parts[2]));
      w.column = col;
      return w;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::int64_t integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer exponent");
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc()) {
      pos_ = start;
      fail("exponent out of range");
    }
    return v;
  }

  std::string_view s_;
  WordParseOptions opt_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, const WordParseOptions& options) { return Parser(text, options).parse(); }

std::string render_word(const Word& w) {
  switch (w.kind) {
    case Word::Kind::Generator:
      return "g" + std::to_string(w.index);
    case Word::Kind::Central:
      return "z";
    case Word::Kind::Product:
      return "(" + render_word(w.children[0]) + "*" + render_word(w.children[1]) + ")";
    case Word::Kind::Power:
      return render_word(w.children[0]) + "^" + std::to_string(w.exponent);
    case Word::Kind::Commutator:
      return "[" + render_word(w.children[0]) + "," + render_word(w.children[1]) + "]";
    case Word::Kind::Associator:
      return "[" + render_word(w.children[0]) + "," + render_word(w.children[1]) + "," + render_word(w.children[2]) +
             "]";
  }
  return {};
}

std::string caret_diagnostic(std::string_view text, std::size_t column, const std::string& message) {
  std::string out(text);
  out += '\n';
  out += std::string(column > 0 ? column - 1 : 0, ' ');
  out += "^ ";
  out += message;
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct CodedAlgebra {
  const CodedLoop& loop;
  LoopElement identity() const { return loop.identity(); }
  std::size_t dim() const { return loop.dim(); }
  LoopElement generator(std::size_t i) const { return loop.generator(i); }
  LoopElement central_generator() const { return loop.central(1); }
  LoopElement mul(const LoopElement& a, const LoopElement& b) const { return loop.mul(a, b); }
  LoopElement inv(const LoopElement& a) const { return loop.inv(a); }
  LoopElement pow(const LoopElement& a, std::int64_t n) const { return loop.pow(a, n); }
};

}  // namespace

LoopElement eval_word(const Word& w, const CodedLoop& loop) { return eval_word_in(w, CodedAlgebra{loop}); }

std::string normal_form_string(const NormalForm& nf) {
  std::string head;
  if (nf.z != 0) head = nf.z == 1 ? "z" : "z^" + std::to_string(nf.z);
  std::vector<std::string> factors;
  for (std::size_t i = 0; i < nf.exponents.size(); ++i) {
    const int r = nf.exponents[i];
    if (r == 0) continue;
    factors.push_back("g" + std::to_string(i + 1) + (r == 1 ? "" : "^" + std::to_string(r)));
  }
  std::string tail;
  for (std::size_t i = factors.size(); i-- > 0;) tail = tail.empty() ? factors[i] : factors[i] + "(" + tail + ")";
  if (head.empty() && tail.empty()) return "1";
  if (head.empty()) return tail;
  if (tail.empty()) return head;
  return head + " " + tail;
}

std::string normal_form_string(const CodedLoop& loop, const LoopElement& a) {
  return normal_form_string(normal_form(loop, a));
}

std::string normal_form_string(const Word& w, const CodedLoop& loop) {
  return normal_form_string(loop, eval_word(w, loop));
}

}  // namespace codedloops
