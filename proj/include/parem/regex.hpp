#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace parem {

enum class TokenKind {
  Symbol,
  Star,
  Plus,
  Question,
  Pipe,
  LParen,
  RParen,
  LBracket,
  RangeDots,
  RBracket,
};

struct Token {
  TokenKind kind;
  char symbol = '\0';  // only meaningful for TokenKind::Symbol
  std::size_t position = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Splits a pattern into tokens. Metacharacters are `* + ? | ( ) [ ]` and the
/// two-character `..` (only legal between brackets). A backslash turns the
/// next character into a plain symbol.
std::vector<Token> tokenize(std::string_view pattern);

/// Regex syntax tree. Concat and Union are n-ary (at least two children);
/// the quantifiers hold exactly one child. Literal stores its symbol in `lo`.
struct RegexAst {
  enum class Kind { Literal, Concat, Union, Star, Plus, Optional, Range };

  Kind kind = Kind::Literal;
  char lo = '\0';
  char hi = '\0';
  std::vector<RegexAst> children;

  static RegexAst literal(char c);
  static RegexAst range(char lo, char hi);
  static RegexAst concat(std::vector<RegexAst> children);
  static RegexAst alternation(std::vector<RegexAst> children);
  static RegexAst star(RegexAst child);
  static RegexAst plus(RegexAst child);
  static RegexAst optional(RegexAst child);

  friend bool operator==(const RegexAst&, const RegexAst&) = default;
};

/// Recursive-descent parser. Precedence from tightest: postfix quantifiers,
/// concatenation, union. Runs of the same binary operator are flattened.
RegexAst parse(const std::vector<Token>& tokens);

inline RegexAst parse_regex(std::string_view pattern) {
  return parse(tokenize(pattern));
}

/// Prints an AST back to pattern text using the fewest parentheses that
/// still parse to the same tree. Metacharacters and '.' are escaped.
std::string to_pattern(const RegexAst& ast);

/// Distinct literal/range characters in first-appearance order.
std::vector<char> ast_alphabet(const RegexAst& ast);

/// Debug form, e.g. `Concat(Optional(Union(a,b)),Star(c))`.
std::string to_debug_string(const RegexAst& ast);

}  // namespace parem
