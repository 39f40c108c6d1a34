#pragma once

// Loop words over generators g1, g2, ... and the central generator z.
//
//   expr := word ['*' word]
//   word := atom | word '^' int | '[' expr ',' expr ']' | '[' expr ',' expr ',' expr ']'
//   atom := 'z' | 'g' index | '(' expr ')'
//
// A product of three or more factors needs explicit parentheses unless the
// parser is told to associate to the left.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "codedloops/coded_loop.hpp"
#include "codedloops/error.hpp"

namespace codedloops {

struct Word {
  enum class Kind { Generator, Central, Product, Power, Commutator, Associator };

  Kind kind = Kind::Central;
  /// 1-based generator index for Generator nodes.
  std::size_t index = 0;
  /// Exponent for Power nodes.
  std::int64_t exponent = 0;
  std::vector<Word> children;
  /// 1-based column of the node in the parsed text (0 if synthesized).
  std::size_t column = 0;

  static Word generator(std::size_t i);
  static Word central();
  static Word product(Word a, Word b);
  static Word power(Word base, std::int64_t n);
  static Word commutator(Word a, Word b);
  static Word associator(Word a, Word b, Word c);

  /// Structural equality; columns are ignored.
  bool operator==(const Word& o) const;
};

struct WordParseOptions {
  /// Read a*b*c as (a*b)*c. This hides the association and is off by default.
  bool left_assoc = false;
};

/// Throws ParseError (line 1, column of the offending character).
Word parse_word(std::string_view text, const WordParseOptions& options = {});

/// Fully parenthesized text that parses back to the same tree.
std::string render_word(const Word& w);

/// The offending line with a caret under `column`, followed by `message`.
std::string caret_diagnostic(std::string_view text, std::size_t column, const std::string& message);

/// Evaluates a word in any structure offering mul, inv, pow(x, n), generator(i)
/// (0-based), central_generator(), identity() and dim().
template <class Algebra>
auto eval_word_in(const Word& w, const Algebra& a) -> decltype(a.identity()) {
  switch (w.kind) {
    case Word::Kind::Generator:
      if (w.index < 1 || w.index > a.dim()) {
        throw InvalidArgument("unbound generator g" + std::to_string(w.index) + " at column " +
                              std::to_string(w.column) + " (loop has " + std::to_string(a.dim()) + ")");
      }
      return a.generator(w.index - 1);
    case Word::Kind::Central:
      return a.central_generator();
    case Word::Kind::Product:
      return a.mul(eval_word_in(w.children[0], a), eval_word_in(w.children[1], a));
    case Word::Kind::Power:
      return a.pow(eval_word_in(w.children[0], a), w.exponent);
    case Word::Kind::Commutator: {
      const auto x = eval_word_in(w.children[0], a);
      const auto y = eval_word_in(w.children[1], a);
      return a.mul(a.inv(a.mul(y, x)), a.mul(x, y));
    }
    case Word::Kind::Associator: {
      const auto x = eval_word_in(w.children[0], a);
      const auto y = eval_word_in(w.children[1], a);
      const auto z = eval_word_in(w.children[2], a);
      return a.mul(a.inv(a.mul(x, a.mul(y, z))), a.mul(a.mul(x, y), z));
    }
  }
  throw InvalidArgument("malformed word");
}

LoopElement eval_word(const Word& w, const CodedLoop& loop);

/// "z^a g1^r1(g2^r2(g3))" with zero exponents dropped and exponent 1 implicit;
/// the identity renders as "1".
std::string normal_form_string(const NormalForm& nf);
std::string normal_form_string(const CodedLoop& loop, const LoopElement& a);
std::string normal_form_string(const Word& w, const CodedLoop& loop);

}  // namespace codedloops
