#pragma once

// Generators and independent oracles shared by the unit and acceptance
// suites. Nothing here calls into the code path it is used to check.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "parem/dfa.hpp"
#include "parem/matcher.hpp"
#include "parem/regex.hpp"

namespace parem::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

/// The transition table of the 'parallel' search automaton, typed in by hand
/// (columns p a r e l).
inline Dfa parallel_search_dfa() {
  std::vector<StateId> table = {
      1, 0, 0, 0, 0,  //
      1, 2, 0, 0, 0,  //
      1, 0, 3, 0, 0,  //
      1, 4, 0, 0, 0,  //
      1, 0, 0, 0, 5,  //
      1, 0, 0, 0, 6,  //
      1, 0, 0, 7, 0,  //
      1, 0, 0, 0, 8,  //
      1, 0, 0, 0, 0,  //
  };
  return Dfa({'p', 'a', 'r', 'e', 'l'}, 9, std::move(table), 0, {8});
}

inline constexpr const char* kWorkedExample = "plaraparallelapareparapl";

/// Random DFA over the first `symbols` of "abcdefghijklmnopqrstuvwxyz".
/// Each entry is kDead with probability `dead_probability`.
inline Dfa random_dfa(Rng& rng, std::size_t states, std::size_t symbols,
                      double dead_probability, double final_probability = 0.3) {
  std::vector<char> alphabet;
  for (std::size_t i = 0; i < symbols; ++i) alphabet.push_back(static_cast<char>('a' + i));
  std::vector<StateId> table(states * symbols);
  for (auto& t : table) {
    t = coin(rng, dead_probability) ? kDead : static_cast<StateId>(uniform(rng, 0, states - 1));
  }
  std::vector<StateId> finals;
  for (std::size_t s = 0; s < states; ++s) {
    if (coin(rng, final_probability)) finals.push_back(static_cast<StateId>(s));
  }
  return Dfa(std::move(alphabet), states, std::move(table),
             static_cast<StateId>(uniform(rng, 0, states - 1)), std::move(finals));
}

inline std::string random_text(Rng& rng, std::size_t length, std::span<const char> alphabet) {
  std::string out(length, '\0');
  for (char& c : out) c = alphabet[uniform(rng, 0, alphabet.size() - 1)];
  return out;
}

/// Random AST of depth <= `depth` over `alphabet`.
inline RegexAst random_ast(Rng& rng, int depth, const std::string& alphabet) {
  const auto pick = [&] { return alphabet[uniform(rng, 0, alphabet.size() - 1)]; };
  if (depth <= 1 || coin(rng, 0.25)) {
    if (coin(rng, 0.15)) {
      char a = pick();
      char b = pick();
      if (a > b) std::swap(a, b);
      return RegexAst::range(a, b);
    }
    return RegexAst::literal(pick());
  }
  switch (uniform(rng, 0, 4)) {
    case 0:
    case 1: {
      std::vector<RegexAst> kids;
      const std::size_t n = uniform(rng, 2, 3);
      for (std::size_t i = 0; i < n; ++i) kids.push_back(random_ast(rng, depth - 1, alphabet));
      return coin(rng, 0.5) ? RegexAst::concat(std::move(kids))
                            : RegexAst::alternation(std::move(kids));
    }
    case 2: return RegexAst::star(random_ast(rng, depth - 1, alphabet));
    case 3: return RegexAst::plus(random_ast(rng, depth - 1, alphabet));
    default: return RegexAst::optional(random_ast(rng, depth - 1, alphabet));
  }
}

/// Calls `visit` on every string of length 0..max_length over `alphabet`.
inline void for_each_string(const std::string& alphabet, std::size_t max_length,
                            const std::function<void(const std::string&)>& visit) {
  std::string s;
  std::function<void()> rec = [&] {
    visit(s);
    if (s.size() == max_length) return;
    for (char c : alphabet) {
      s.push_back(c);
      rec();
      s.pop_back();
    }
  };
  rec();
}

namespace detail {

// ends[j] is set when the node can match text[from, j).
inline std::vector<char> match_ends(const RegexAst& node, const std::string& text,
                                    const std::vector<char>& starts) {
  const std::size_t n = text.size();
  std::vector<char> out(n + 1, 0);
  using Kind = RegexAst::Kind;
  switch (node.kind) {
    case Kind::Literal:
    case Kind::Range:
      for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (starts[i] && c >= static_cast<unsigned char>(node.lo) &&
            c <= static_cast<unsigned char>(node.hi)) {
          out[i + 1] = 1;
        }
      }
      return out;
    case Kind::Concat: {
      std::vector<char> cur = starts;
      for (const auto& child : node.children) cur = match_ends(child, text, cur);
      return cur;
    }
    case Kind::Union:
      for (const auto& child : node.children) {
        const auto e = match_ends(child, text, starts);
        for (std::size_t j = 0; j <= n; ++j) out[j] |= e[j];
      }
      return out;
    case Kind::Optional: {
      out = match_ends(node.children.front(), text, starts);
      for (std::size_t j = 0; j <= n; ++j) out[j] |= starts[j];
      return out;
    }
    case Kind::Star:
    case Kind::Plus: {
      std::vector<char> reach = node.kind == Kind::Star ? starts : std::vector<char>(n + 1, 0);
      std::vector<char> frontier = starts;
      while (true) {
        const auto e = match_ends(node.children.front(), text, frontier);
        bool grew = false;
        std::vector<char> next(n + 1, 0);
        for (std::size_t j = 0; j <= n; ++j) {
          if (e[j] && !reach[j]) {
            reach[j] = 1;
            next[j] = 1;
            grew = true;
          }
        }
        if (!grew) break;
        frontier = next;
      }
      return reach;
    }
  }
  return out;
}

}  // namespace detail

/// Direct AST semantics by position-set propagation. Independent of the
/// Thompson/subset pipeline.
inline bool ast_accepts(const RegexAst& ast, const std::string& text) {
  std::vector<char> starts(text.size() + 1, 0);
  starts[0] = 1;
  return detail::match_ends(ast, text, starts)[text.size()] != 0;
}

/// State after each prefix, by plain delta lookups; kDead once dead.
inline std::vector<StateId> walk_states(const Dfa& dfa, const std::string& text) {
  std::vector<StateId> out;
  StateId s = dfa.start();
  for (char c : text) {
    if (s != kDead) s = dfa.next(s, *dfa.column_of(c));
    out.push_back(s);
  }
  return out;
}

/// COUNT/ACCEPT report computed by a step-by-step delta walk.
inline MatchReport brute_force_report(const Dfa& dfa, const std::string& text, MatchMode mode) {
  MatchReport r;
  r.mode = mode;
  StateId s = dfa.start();
  for (char c : text) {
    s = dfa.next(s, *dfa.column_of(c));
    if (s == kDead) break;
    if (dfa.is_final(s)) ++r.count;
  }
  if (s != kDead) {
    r.end_state = s;
    r.accepted = dfa.is_final(s);
  }
  return r;
}

inline std::size_t count_substring(const std::string& text, const std::string& word) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + word.size() <= text.size(); ++i) {
    if (text.compare(i, word.size(), word) == 0) ++count;
  }
  return count;
}

}  // namespace parem::testing
