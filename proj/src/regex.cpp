#include "parem/regex.hpp"

#include <algorithm>
#include <utility>

#include "parem/error.hpp"

namespace parem {

namespace {

bool is_meta(char c) {
  switch (c) {
    case '*': case '+': case '?': case '|':
    case '(': case ')': case '[': case ']':
    case '\\': case '.':
      return true;
    default:
      return false;
  }
}

bool is_printable(char c) {
  return c >= 0x20 && c <= 0x7e;
}

std::string describe(char c) {
  return std::string("'") + c + "'";
}

}  // namespace

std::vector<Token> tokenize(std::string_view pattern) {
  std::vector<Token> tokens;
  tokens.reserve(pattern.size());
  bool in_brackets = false;

  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const char c = pattern[i];
    if (!is_printable(c)) {
      throw Error(ErrorCode::InvalidCharacter,
                  "non-printable character at position " + std::to_string(i),
                  i);
    }
    switch (c) {
      case '\\':
        if (i + 1 == pattern.size()) {
          throw Error(ErrorCode::TrailingBackslash,
                      "pattern ends with an unfinished escape", i);
        }
        if (!is_printable(pattern[i + 1])) {
          throw Error(ErrorCode::InvalidCharacter,
                      "non-printable character at position " +
                          std::to_string(i + 1),
                      i + 1);
        }
        tokens.push_back({TokenKind::Symbol, pattern[i + 1], i});
        ++i;
        break;
      case '*': tokens.push_back({TokenKind::Star, '\0', i}); break;
      case '+': tokens.push_back({TokenKind::Plus, '\0', i}); break;
      case '?': tokens.push_back({TokenKind::Question, '\0', i}); break;
      case '|': tokens.push_back({TokenKind::Pipe, '\0', i}); break;
      case '(': tokens.push_back({TokenKind::LParen, '\0', i}); break;
      case ')': tokens.push_back({TokenKind::RParen, '\0', i}); break;
      case '[':
        in_brackets = true;
        tokens.push_back({TokenKind::LBracket, '\0', i});
        break;
      case ']':
        in_brackets = false;
        tokens.push_back({TokenKind::RBracket, '\0', i});
        break;
      case '.':
        if (i + 1 < pattern.size() && pattern[i + 1] == '.') {
          if (!in_brackets) {
            throw Error(ErrorCode::StrayRangeDots,
                        "'..' outside of a bracketed range at position " +
                            std::to_string(i),
                        i);
          }
          tokens.push_back({TokenKind::RangeDots, '\0', i});
          ++i;
        } else {
          tokens.push_back({TokenKind::Symbol, '.', i});
        }
        break;
      default:
        tokens.push_back({TokenKind::Symbol, c, i});
    }
  }
  return tokens;
}

RegexAst RegexAst::literal(char c) {
  RegexAst node;
  node.kind = Kind::Literal;
  node.lo = node.hi = c;
  return node;
}

RegexAst RegexAst::range(char lo, char hi) {
  if (static_cast<unsigned char>(lo) > static_cast<unsigned char>(hi)) {
    throw Error(ErrorCode::InvalidRange, "range bounds out of order");
  }
  RegexAst node;
  node.kind = Kind::Range;
  node.lo = lo;
  node.hi = hi;
  return node;
}

RegexAst RegexAst::concat(std::vector<RegexAst> children) {
  if (children.size() < 2) {
    throw Error(ErrorCode::InvariantViolation, "Concat needs two children");
  }
  RegexAst node;
  node.kind = Kind::Concat;
  node.children = std::move(children);
  return node;
}

RegexAst RegexAst::alternation(std::vector<RegexAst> children) {
  if (children.size() < 2) {
    throw Error(ErrorCode::InvariantViolation, "Union needs two children");
  }
  RegexAst node;
  node.kind = Kind::Union;
  node.children = std::move(children);
  return node;
}

RegexAst RegexAst::star(RegexAst child) {
  RegexAst node;
  node.kind = Kind::Star;
  node.children.push_back(std::move(child));
  return node;
}

RegexAst RegexAst::plus(RegexAst child) {
  RegexAst node;
  node.kind = Kind::Plus;
  node.children.push_back(std::move(child));
  return node;
}

RegexAst RegexAst::optional(RegexAst child) {
  RegexAst node;
  node.kind = Kind::Optional;
  node.children.push_back(std::move(child));
  return node;
}

namespace {

// union  := concat ('|' concat)*
// concat := postfix+
// postfix:= atom ('*' | '+' | '?')*
// atom   := SYMBOL | '(' union ')' | '[' SYMBOL '..' SYMBOL ']'
class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  RegexAst run() {
    if (tokens_.empty()) {
      throw Error(ErrorCode::EmptySubexpression, "empty pattern", 0);
    }
    RegexAst ast = parse_union();
    if (!at_end()) {
      // Only a stray ')' can stop parse_union early.
      throw Error(ErrorCode::UnbalancedParen,
                  "unmatched ')' at position " + std::to_string(peek().position),
                  peek().position);
    }
    return ast;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }

  std::size_t here() const {
    if (!at_end()) return peek().position;
    return tokens_.empty() ? 0 : tokens_.back().position + 1;
  }

  bool starts_atom() const {
    if (at_end()) return false;
    const TokenKind k = peek().kind;
    return k == TokenKind::Symbol || k == TokenKind::LParen ||
           k == TokenKind::LBracket;
  }

  RegexAst parse_union() {
    std::vector<RegexAst> alternatives;
    alternatives.push_back(parse_concat());
    while (!at_end() && peek().kind == TokenKind::Pipe) {
      ++pos_;
      alternatives.push_back(parse_concat());
    }
    if (alternatives.size() == 1) return std::move(alternatives.front());
    return RegexAst::alternation(std::move(alternatives));
  }

  RegexAst parse_concat() {
    if (!starts_atom()) throw empty_operand();
    std::vector<RegexAst> items;
    while (starts_atom()) items.push_back(parse_postfix());
    if (!at_end()) {
      const TokenKind k = peek().kind;
      if (k == TokenKind::RBracket || k == TokenKind::RangeDots) {
        throw Error(ErrorCode::InvalidRange,
                    "bracket token outside a range at position " +
                        std::to_string(peek().position),
                    peek().position);
      }
    }
    if (items.size() == 1) return std::move(items.front());
    return RegexAst::concat(std::move(items));
  }

  Error empty_operand() const {
    if (!at_end()) {
      const TokenKind k = peek().kind;
      if (k == TokenKind::RBracket || k == TokenKind::RangeDots) {
        return Error(ErrorCode::InvalidRange,
                     "bracket token outside a range at position " +
                         std::to_string(peek().position),
                     peek().position);
      }
    }
    return Error(ErrorCode::EmptySubexpression,
                 "missing operand at position " + std::to_string(here()),
                 here());
  }

  RegexAst parse_postfix() {
    RegexAst node = parse_atom();
    while (!at_end()) {
      const TokenKind k = peek().kind;
      if (k == TokenKind::Star) {
        node = RegexAst::star(std::move(node));
      } else if (k == TokenKind::Plus) {
        node = RegexAst::plus(std::move(node));
      } else if (k == TokenKind::Question) {
        node = RegexAst::optional(std::move(node));
      } else {
        break;
      }
      ++pos_;
    }
    return node;
  }

  RegexAst parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Symbol:
        ++pos_;
        return RegexAst::literal(t.symbol);
      case TokenKind::LParen: {
        const std::size_t open = t.position;
        ++pos_;
        if (!at_end() && peek().kind == TokenKind::RParen) {
          throw Error(ErrorCode::EmptySubexpression,
                      "empty group at position " + std::to_string(open), open);
        }
        RegexAst inner = parse_union();
        if (at_end() || peek().kind != TokenKind::RParen) {
          throw Error(ErrorCode::UnbalancedParen,
                      "unclosed '(' at position " + std::to_string(open), open);
        }
        ++pos_;
        return inner;
      }
      case TokenKind::LBracket:
        return parse_range();
      default:
        throw empty_operand();
    }
  }

  RegexAst parse_range() {
    const std::size_t open = peek().position;
    auto fail = [open](const std::string& why) {
      return Error(ErrorCode::InvalidRange,
                   "malformed range at position " + std::to_string(open) +
                       ": " + why,
                   open);
    };
    ++pos_;
    const auto expect = [&](TokenKind kind) -> const Token& {
      if (at_end() || peek().kind != kind) {
        throw fail("expected [x..y] with single-character endpoints");
      }
      return tokens_[pos_++];
    };
    const char lo = expect(TokenKind::Symbol).symbol;
    expect(TokenKind::RangeDots);
    const char hi = expect(TokenKind::Symbol).symbol;
    expect(TokenKind::RBracket);
    if (static_cast<unsigned char>(lo) > static_cast<unsigned char>(hi)) {
      throw fail(describe(lo) + " sorts after " + describe(hi));
    }
    return RegexAst::range(lo, hi);
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

// Binding strength used by the printer: higher binds tighter.
int binding(RegexAst::Kind kind) {
  switch (kind) {
    case RegexAst::Kind::Union: return 0;
    case RegexAst::Kind::Concat: return 1;
    case RegexAst::Kind::Star:
    case RegexAst::Kind::Plus:
    case RegexAst::Kind::Optional: return 2;
    case RegexAst::Kind::Literal:
    case RegexAst::Kind::Range: return 3;
  }
  return 3;
}

void append_symbol(std::string& out, char c) {
  if (is_meta(c)) out.push_back('\\');
  out.push_back(c);
}

void print(const RegexAst& node, std::string& out);

// Same-kind n-ary children need parentheses too, otherwise the parser would
// flatten them into the parent.
void print_child(const RegexAst& parent, const RegexAst& child,
                 std::string& out) {
  const int pb = binding(parent.kind);
  const int cb = binding(child.kind);
  const bool wrap = cb < pb || (cb == pb && pb < 2);
  if (wrap) out.push_back('(');
  print(child, out);
  if (wrap) out.push_back(')');
}

void print(const RegexAst& node, std::string& out) {
  using Kind = RegexAst::Kind;
  switch (node.kind) {
    case Kind::Literal:
      append_symbol(out, node.lo);
      return;
    case Kind::Range:
      out.push_back('[');
      append_symbol(out, node.lo);
      out += "..";
      append_symbol(out, node.hi);
      out.push_back(']');
      return;
    case Kind::Concat:
      for (const auto& child : node.children) print_child(node, child, out);
      return;
    case Kind::Union:
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i != 0) out.push_back('|');
        print_child(node, node.children[i], out);
      }
      return;
    case Kind::Star:
    case Kind::Plus:
    case Kind::Optional: {
      const RegexAst& child = node.children.front();
      const bool wrap = binding(child.kind) < 2;
      if (wrap) out.push_back('(');
      print(child, out);
      if (wrap) out.push_back(')');
      out.push_back(node.kind == Kind::Star   ? '*'
                    : node.kind == Kind::Plus ? '+'
                                              : '?');
      return;
    }
  }
}

void collect_alphabet(const RegexAst& node, std::vector<char>& out) {
  auto add = [&out](char c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  switch (node.kind) {
    case RegexAst::Kind::Literal:
      add(node.lo);
      return;
    case RegexAst::Kind::Range:
      for (int c = static_cast<unsigned char>(node.lo);
           c <= static_cast<unsigned char>(node.hi); ++c) {
        add(static_cast<char>(c));
      }
      return;
    default:
      for (const auto& child : node.children) collect_alphabet(child, out);
  }
}

void debug(const RegexAst& node, std::string& out) {
  using Kind = RegexAst::Kind;
  const char* name = "";
  switch (node.kind) {
    case Kind::Literal:
      out.push_back(node.lo);
      return;
    case Kind::Range:
      out += "Range(";
      out.push_back(node.lo);
      out.push_back(',');
      out.push_back(node.hi);
      out.push_back(')');
      return;
    case Kind::Concat: name = "Concat"; break;
    case Kind::Union: name = "Union"; break;
    case Kind::Star: name = "Star"; break;
    case Kind::Plus: name = "Plus"; break;
    case Kind::Optional: name = "Optional"; break;
  }
  out += name;
  out.push_back('(');
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i != 0) out.push_back(',');
    debug(node.children[i], out);
  }
  out.push_back(')');
}

}  // namespace

RegexAst parse(const std::vector<Token>& tokens) {
  return Parser(tokens).run();
}

std::string to_pattern(const RegexAst& ast) {
  std::string out;
  print(ast, out);
  return out;
}

std::vector<char> ast_alphabet(const RegexAst& ast) {
  std::vector<char> out;
  collect_alphabet(ast, out);
  return out;
}

std::string to_debug_string(const RegexAst& ast) {
  std::string out;
  debug(ast, out);
  return out;
}

}  // namespace parem
