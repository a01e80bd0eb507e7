#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parem/nfa.hpp"
#include "parem/types.hpp"

namespace parem {

/// Dense transition-table DFA (Q, Sigma, delta, q0, F). The table is stored
/// row-major, `state_count x alphabet.size()`; kDead marks a missing move.
/// Values are immutable once constructed and safe to share between threads.
class Dfa {
 public:
  /// Validates every invariant and throws InvariantViolation on failure.
  Dfa(std::vector<char> alphabet, std::size_t state_count,
      std::vector<StateId> table, StateId start, std::vector<StateId> finals);

  std::size_t state_count() const { return state_count_; }
  std::span<const char> alphabet() const { return alphabet_; }
  std::size_t symbol_count() const { return alphabet_.size(); }
  StateId start() const { return start_; }
  /// Sorted ascending.
  const std::vector<StateId>& finals() const { return finals_; }
  std::span<const StateId> table() const { return table_; }

  bool is_final(StateId s) const { return final_flags_[static_cast<std::size_t>(s)] != 0; }

  /// Column index of `c`, or nullopt if `c` is not in the alphabet.
  std::optional<std::size_t> column_of(char c) const {
    const int col = columns_[static_cast<unsigned char>(c)];
    if (col < 0) return std::nullopt;
    return static_cast<std::size_t>(col);
  }

  StateId next(StateId s, std::size_t column) const {
    return table_[static_cast<std::size_t>(s) * alphabet_.size() + column];
  }

  /// delta(s, c); throws SymbolNotInAlphabet if `c` is not in Sigma.
  StateId step(StateId s, char c) const;

  bool complete() const;

  friend bool operator==(const Dfa& a, const Dfa& b) {
    return a.alphabet_ == b.alphabet_ && a.state_count_ == b.state_count_ &&
           a.table_ == b.table_ && a.start_ == b.start_ &&
           a.finals_ == b.finals_;
  }

 private:
  std::vector<char> alphabet_;
  std::size_t state_count_;
  std::vector<StateId> table_;
  StateId start_;
  std::vector<StateId> finals_;
  std::vector<char> final_flags_;
  std::array<int, 256> columns_{};
};

struct SubsetOptions {
  std::size_t max_states = 1'000'000;
};

/// Subset construction over the NFA's labels (see nfa_alphabet). DFA states
/// are numbered in breadth-first discovery order from the start closure; an
/// empty successor set becomes kDead rather than an explicit sink state.
Dfa subset_construct(const Nfa& nfa, SubsetOptions options = {});

/// tokenize -> parse -> thompson -> simplify -> subset.
Dfa compile_regex(std::string_view pattern, SubsetOptions options = {});

/// Minimal complete DFA for Sigma* . literal built from the failure function.
/// State k means the longest suffix of the input read so far that is also a
/// prefix of `literal` has length k. The only final state is |literal|.
/// `alphabet` lists the symbols in column order.
Dfa build_search_dfa(std::string_view literal, std::string_view alphabet);

/// Tab-separated transition table, see README for the layout.
std::string export_dfa_table(const Dfa& dfa);
Dfa load_dfa_table(std::string_view text);

/// Graphviz digraph; finals are double circles, kDead entries are omitted.
std::string export_dot(const Dfa& dfa);

}  // namespace parem
