#include <gtest/gtest.h>

#include <cctype>

#include "parem/error.hpp"
#include "parem/nfa.hpp"
#include "parem/regex.hpp"
#include "test_support.hpp"

namespace parem {
namespace {

using testing::ast_accepts;
using testing::for_each_string;

ErrorCode error_of(std::string_view pattern) {
  try {
    parse_regex(pattern);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "pattern '" << pattern << "' parsed without error";
  return ErrorCode::InvalidArgument;
}

TEST(Tokenize, UnionOfTwoSymbols) {
  const std::vector<Token> expected = {
      {TokenKind::Symbol, 'a', 0}, {TokenKind::Pipe, '\0', 1}, {TokenKind::Symbol, 'b', 2}};
  EXPECT_EQ(tokenize("a|b"), expected);
}

TEST(Tokenize, BracketRange) {
  const std::vector<Token> expected = {{TokenKind::LBracket, '\0', 0},
                                       {TokenKind::Symbol, '0', 1},
                                       {TokenKind::RangeDots, '\0', 2},
                                       {TokenKind::Symbol, '3', 4},
                                       {TokenKind::RBracket, '\0', 5}};
  EXPECT_EQ(tokenize("[0..3]"), expected);
}

TEST(Tokenize, EscapedMetacharacterIsSymbol) {
  const std::vector<Token> expected = {{TokenKind::Symbol, '*', 0}};
  EXPECT_EQ(tokenize("\\*"), expected);
}

TEST(Tokenize, SingleDotIsSymbol) {
  const auto tokens = tokenize("a.b");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[1].kind, TokenKind::Symbol);
  EXPECT_EQ(tokens[1].symbol, '.');
}

TEST(Tokenize, Errors) {
  try {
    tokenize("ab\\");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TrailingBackslash);
    EXPECT_EQ(e.position(), 2u);
  }
  try {
    tokenize("a..b");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StrayRangeDots);
    EXPECT_EQ(e.position(), 1u);
  }
  EXPECT_THROW(tokenize("a\tb"), Error);
}

TEST(Tokenize, PositionsStrictlyIncrease) {
  for (const char* pattern : {"(a|b)?c*[0..3]b+", "\\(\\)x|[a..z]*", "a.b.c"}) {
    const auto tokens = tokenize(pattern);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      EXPECT_LT(tokens[i - 1].position, tokens[i].position) << pattern;
    }
  }
}

TEST(Parse, SingleAtom) {
  EXPECT_EQ(parse_regex("a"), RegexAst::literal('a'));
}

TEST(Parse, ExampleTree) {
  const RegexAst expected = RegexAst::concat({
      RegexAst::optional(RegexAst::alternation({RegexAst::literal('a'), RegexAst::literal('b')})),
      RegexAst::star(RegexAst::literal('c')),
      RegexAst::range('0', '3'),
      RegexAst::plus(RegexAst::literal('b')),
  });
  EXPECT_EQ(parse_regex("(a|b)?c*[0..3]b+"), expected);
  EXPECT_EQ(to_debug_string(parse_regex("(a|b)?c*[0..3]b+")),
            "Concat(Optional(Union(a,b)),Star(c),Range(0,3),Plus(b))");
}

TEST(Parse, StarBindsTighterThanUnion) {
  const RegexAst loose = parse_regex("a|b*");
  EXPECT_EQ(loose, RegexAst::alternation({RegexAst::literal('a'),
                                          RegexAst::star(RegexAst::literal('b'))}));
  const RegexAst grouped = parse_regex("(a|b)*");
  EXPECT_EQ(grouped, RegexAst::star(RegexAst::alternation(
                         {RegexAst::literal('a'), RegexAst::literal('b')})));

  // Language of a|b* over {a,b}, length <= 4: exactly "a" and runs of b.
  for_each_string("ab", 4, [&](const std::string& s) {
    const bool expected = s == "a" || s.find('a') == std::string::npos;
    EXPECT_EQ(ast_accepts(loose, s), expected) << s;
  });
  EXPECT_TRUE(ast_accepts(grouped, "ab"));
  EXPECT_FALSE(ast_accepts(loose, "ab"));
}

TEST(Parse, PrecedenceForAllAtomPairs) {
  const std::string atoms = "ab0Z.";
  for (char a : atoms) {
    for (char b : atoms) {
      std::string x(1, a), y(1, b);
      if (a == '.') x = "\\.";
      if (b == '.') y = "\\.";
      const RegexAst u = parse_regex(x + "|" + y + "*");
      ASSERT_EQ(u.kind, RegexAst::Kind::Union);
      EXPECT_EQ(u.children[1].kind, RegexAst::Kind::Star);
      const RegexAst s = parse_regex("(" + x + "|" + y + ")*");
      ASSERT_EQ(s.kind, RegexAst::Kind::Star);
      EXPECT_EQ(s.children[0].kind, RegexAst::Kind::Union);
    }
  }
}

TEST(Parse, FlattensSameLevelOperators) {
  EXPECT_EQ(parse_regex("a|b|c").children.size(), 3u);
  EXPECT_EQ(parse_regex("abc").children.size(), 3u);
  EXPECT_EQ(parse_regex("(a|b)|c").children.size(), 2u);
}

TEST(Parse, StackedQuantifiers) {
  EXPECT_EQ(parse_regex("a*?"),
            RegexAst::optional(RegexAst::star(RegexAst::literal('a'))));
}

TEST(Parse, Errors) {
  EXPECT_EQ(error_of(""), ErrorCode::EmptySubexpression);
  EXPECT_EQ(error_of("()"), ErrorCode::EmptySubexpression);
  EXPECT_EQ(error_of("a||b"), ErrorCode::EmptySubexpression);
  EXPECT_EQ(error_of("a|"), ErrorCode::EmptySubexpression);
  EXPECT_EQ(error_of("*a"), ErrorCode::EmptySubexpression);
  EXPECT_EQ(error_of("(*)"), ErrorCode::EmptySubexpression);
  EXPECT_EQ(error_of("(a"), ErrorCode::UnbalancedParen);
  EXPECT_EQ(error_of("a)"), ErrorCode::UnbalancedParen);
  EXPECT_EQ(error_of("((a)"), ErrorCode::UnbalancedParen);
  EXPECT_EQ(error_of("[3..0]"), ErrorCode::InvalidRange);
  EXPECT_EQ(error_of("[a]"), ErrorCode::InvalidRange);
  EXPECT_EQ(error_of("[ab..c]"), ErrorCode::InvalidRange);
  EXPECT_EQ(error_of("[a..(]"), ErrorCode::InvalidRange);
  EXPECT_EQ(error_of("[a..c"), ErrorCode::InvalidRange);
  EXPECT_EQ(error_of("a]"), ErrorCode::InvalidRange);
}

TEST(Parse, MixedClassRangeIsOrderedByCode) {
  EXPECT_EQ(parse_regex("[9..A]"), RegexAst::range('9', 'A'));
  EXPECT_EQ(parse_regex("[\\(..\\+]"), RegexAst::range('(', '+'));
}

TEST(Parse, PrinterRoundTripOnRandomTrees) {
  testing::Rng rng(2024);
  const std::string alphabet = "ab.*(|]\\0";
  for (int i = 0; i < 500; ++i) {
    const RegexAst ast = testing::random_ast(rng, 5, alphabet);
    const std::string printed = to_pattern(ast);
    EXPECT_EQ(parse_regex(printed), ast) << printed;
  }
}

TEST(Parse, RangeMatchesExpandedUnion) {
  const std::vector<std::pair<char, char>> ranges = {{'0', '3'}, {'a', 'a'}, {'x', 'z'}, {'8', 'B'}};
  for (auto [lo, hi] : ranges) {
    std::string expanded;
    std::string probe;
    for (int c = lo; c <= hi; ++c) {
      if (!expanded.empty()) expanded += "|";
      if (!std::isalnum(c)) expanded.push_back('\\');
      expanded.push_back(static_cast<char>(c));
      probe.push_back(static_cast<char>(c));
    }
    probe.push_back(static_cast<char>(lo - 1));
    probe.push_back(static_cast<char>(hi + 1));
    const std::string range = std::string("[") + lo + ".." + hi + "]";
    const Nfa ranged = thompson_nfa(parse_regex(range));
    const Nfa unioned = thompson_nfa(parse_regex(expanded));
    for_each_string(probe, 2, [&](const std::string& s) {
      EXPECT_EQ(nfa_simulate(ranged, s), nfa_simulate(unioned, s)) << range << " on " << s;
    });
  }
}

TEST(Parse, AlphabetInFirstAppearanceOrder) {
  const auto sigma = ast_alphabet(parse_regex("(a|b)?c*[0..3]b+"));
  EXPECT_EQ(std::string(sigma.begin(), sigma.end()), "abc0123");
}

}  // namespace
}  // namespace parem
