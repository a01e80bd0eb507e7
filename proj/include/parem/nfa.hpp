#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "parem/regex.hpp"
#include "parem/types.hpp"

namespace parem {

struct NfaTransition {
  StateId from = 0;
  std::optional<char> label;  // nullopt is an epsilon move
  StateId to = 0;

  bool epsilon() const { return !label.has_value(); }
  friend bool operator==(const NfaTransition&, const NfaTransition&) = default;
};

/// Epsilon-NFA with a single start and a single accept state.
struct Nfa {
  std::size_t state_count = 0;
  std::vector<NfaTransition> transitions;
  StateId start = 0;
  StateId accept = 0;

  std::size_t epsilon_count() const;
  /// Throws InvariantViolation on out-of-range ids.
  void validate() const;

  friend bool operator==(const Nfa&, const Nfa&) = default;
};

/// McNaughton-Yamada-Thompson construction, one gadget per AST node.
/// Concatenated fragments are joined with epsilon moves.
Nfa thompson_nfa(const RegexAst& ast);

/// Merges every epsilon edge u -> v where that edge is u's only outgoing
/// edge and v's only incoming edge, until no such edge remains. State ids
/// are compacted afterwards, preserving relative order.
Nfa simplify_nfa(const Nfa& nfa);

/// Non-epsilon labels in the order they first appear in the transition list.
std::vector<char> nfa_alphabet(const Nfa& nfa);

/// Breadth-first state-set simulation with precomputed adjacency; reuse one
/// instance when checking many strings against the same NFA.
class NfaSimulator {
 public:
  explicit NfaSimulator(const Nfa& nfa);

  bool accepts(std::string_view input) const;

 private:
  void close(std::vector<StateId>& frontier, std::vector<char>& seen) const;

  struct Edge {
    char label;
    StateId to;
  };
  std::size_t state_count_;
  StateId start_;
  StateId accept_;
  std::vector<std::vector<StateId>> epsilon_;
  std::vector<std::vector<Edge>> labeled_;
};

bool nfa_simulate(const Nfa& nfa, std::string_view input);

}  // namespace parem
