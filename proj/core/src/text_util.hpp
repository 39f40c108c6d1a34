#pragma once

// Line tokenizer shared by the text formats.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "codedloops/error.hpp"

namespace codedloops::detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

/// Splits text into non-empty lines of whitespace-separated tokens, dropping
/// everything after '#'.
inline std::vector<Line> tokenize_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{line_no, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      if (j > i) line.tokens.push_back({raw.substr(i, j - i), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline std::int64_t parse_int(const Token& tok, std::size_t line) {
  std::int64_t v = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("expected an integer, found '" + std::string(tok.text) + "'", line, tok.column);
  }
  return v;
}

inline void expect_arity(const Line& line, std::size_t n) {
  if (line.tokens.size() != n) {
    throw ParseError("'" + std::string(line.tokens[0].text) + "' expects " + std::to_string(n - 1) +
                         " argument(s), found " + std::to_string(line.tokens.size() - 1),
                     line.number, line.tokens[0].column);
  }
}

}  // namespace codedloops::detail
